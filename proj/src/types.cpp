// Copyright 2026 The convwer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "convwer/types.hpp"

#include "convwer/errors.hpp"

namespace convwer {

const char* policy_kind_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kVerbatim:
      return "verbatim";
    case PolicyKind::kNonVerbatim:
      return "nonverbatim";
    case PolicyKind::kLegal:
      return "legal";
    case PolicyKind::kCustom:
      return "custom";
  }
  return "custom";
}

PolicyKind policy_kind_from_name(const std::string& name) {
  if (name == "verbatim") return PolicyKind::kVerbatim;
  if (name == "nonverbatim") return PolicyKind::kNonVerbatim;
  if (name == "legal") return PolicyKind::kLegal;
  if (name == "custom") return PolicyKind::kCustom;
  throw ValidationError("unknown policy kind '" + name + "'");
}

std::string default_policy_display(const std::string& name, PolicyKind kind) {
  if (kind == PolicyKind::kNonVerbatim && name == "nonverbatim") {
    return "non-verbatim";
  }
  return name;
}

const char* token_klass_name(TokenKlass klass) {
  switch (klass) {
    case TokenKlass::kWord:
      return "word";
    case TokenKlass::kFiller:
      return "filler";
    case TokenKlass::kFragment:
      return "fragment";
    case TokenKlass::kHedgeMarker:
      return "hedge_marker";
  }
  return "word";
}

std::vector<std::string> Transcript::surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) {
    out.push_back(t.surface);
  }
  return out;
}

}  // namespace convwer
