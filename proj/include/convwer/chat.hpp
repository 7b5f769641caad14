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

#ifndef CONVWER_CHAT_HPP_
#define CONVWER_CHAT_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "convwer/textnorm.hpp"
#include "convwer/types.hpp"

namespace convwer {

// Bounded CHAT reader. It understands the subset needed to recover a
// verbatim token stream from clinical transcripts:
//
//   *CODE:  main tiers (kept when CODE is in the tier filter)
//   &-um    filled pause        -> filler token
//   &+go    word fragment       -> fragment token
//   [//] [/] retracing markers  -> dropped, retraced words kept
//   (.) (..) (...) pauses       -> dropped
//
// Everything else on a kept tier is either a word or falls under the
// documented strip list (see chat.cpp): bracketed codes, <> scoping,
// +-prefixed terminators, &=events, xxx/yyy/www, word@suffixes,
// unpronounced (paren) word parts. Headers (@...) and dependent tiers
// (%...) are skipped. Dependent-tier content is out of scope.

struct ChatParseResult {
  Transcript transcript;  // verbatim-policy token sequence
  bool empty_warning = false;  // no tier matched the filter
};

// Parses one CHAT document. Structural junk (a tier line with no colon,
// an indented continuation with no tier to continue) raises
// ValidationError naming the 1-based line number.
ChatParseResult parse_chat(const std::string& raw, const std::set<std::string>& tier_filter,
                           const NormalizationScheme& scheme = NormalizationScheme{},
                           const PolicyId& verbatim_policy = PolicyId{
                               "verbatim", PolicyKind::kVerbatim, "verbatim"});

// Session metadata pulled from CHAT headers for manifest construction.
struct ChatHeaderInfo {
  // @ID fields per tier code: code -> raw group field (6th | field).
  std::map<std::string, std::string> group_by_code;
};

ChatHeaderInfo parse_chat_headers(const std::string& raw);

}  // namespace convwer

#endif  // CONVWER_CHAT_HPP_
