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

#include "convwer/chat.hpp"

#include <cstddef>
#include <sstream>

#include "convwer/errors.hpp"

namespace convwer {

namespace {

bool is_blank(const std::string& line) {
  for (char c : line) {
    if (c != ' ' && c != '\t' && c != '\r') {
      return false;
    }
  }
  return true;
}

// Strip the trailing \r a CRLF file leaves behind.
std::string chomp(const std::string& line) {
  if (!line.empty() && line.back() == '\r') {
    return line.substr(0, line.size() - 1);
  }
  return line;
}

// Drops all "(...)" segments: unpronounced word parts like "(be)cause".
// Pure-pause tokens "(.)" "(..)" "(...)" were filtered before this runs.
std::string strip_paren_segments(const std::string& token) {
  std::string out;
  int depth = 0;
  for (char c : token) {
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (depth > 0) --depth;
    } else if (depth == 0) {
      out += c;
    }
  }
  return out;
}

// Rewrites the raw token stream of a kept tier into plain proto-tokens
// that tokenize() understands ("&-um" / "&+go" markers survive, all other
// markup is resolved or dropped). The strip list, in match order:
//
//   [...]      any bracketed code, including [//] and [/] (material
//              outside the brackets is kept, so retraced words survive)
//   (.) (..)   pause marks (any token of only dots inside parens)
//   &=x, &x    paralinguistic events and bare legacy &-forms
//   +...       +-prefixed terminators and linkers (+//. and friends)
//   xxx yyy www  unintelligible / untranscribed passages
//   word@x     special-form suffix: the suffix goes, the word stays
//   <  >       scoping angle brackets: stripped, enclosed words kept
//   (be)cause  unpronounced parts inside a word are dropped
std::vector<std::string> clean_tier_tokens(const std::string& content) {
  std::vector<std::string> proto;
  std::istringstream stream(content);
  std::string tok;
  bool in_bracket = false;
  while (stream >> tok) {
    if (in_bracket) {
      if (tok.find(']') != std::string::npos) {
        in_bracket = false;
      }
      continue;
    }
    if (!tok.empty() && tok.front() == '[') {
      if (tok.find(']') == std::string::npos) {
        in_bracket = true;
      }
      continue;
    }
    // Angle brackets only scope; the words inside stay.
    std::string bare;
    bare.reserve(tok.size());
    for (char c : tok) {
      if (c != '<' && c != '>') {
        bare += c;
      }
    }
    if (bare.empty()) {
      continue;
    }
    // Pause tokens: parens around dots only.
    if (bare.front() == '(' && bare.back() == ')') {
      bool dots_only = bare.size() > 2;
      for (std::size_t i = 1; i + 1 < bare.size(); ++i) {
        if (bare[i] != '.') {
          dots_only = false;
          break;
        }
      }
      if (dots_only) {
        continue;
      }
    }
    if (bare[0] == '+') {
      continue;
    }
    if (bare[0] == '&') {
      if (bare.rfind("&-", 0) == 0 || bare.rfind("&+", 0) == 0) {
        std::string body = strip_paren_segments(bare.substr(2));
        if (body.size() > 0) {
          proto.push_back(bare.substr(0, 2) + body);
        }
      }
      // &=laughs and bare legacy &forms carry no spoken word.
      continue;
    }
    std::string body = strip_paren_segments(bare);
    std::size_t at = body.find('@');
    if (at != std::string::npos) {
      body = body.substr(0, at);
    }
    if (body == "xxx" || body == "yyy" || body == "www" || body.empty()) {
      continue;
    }
    proto.push_back(body);
  }
  return proto;
}

}  // namespace

ChatParseResult parse_chat(const std::string& raw, const std::set<std::string>& tier_filter,
                           const NormalizationScheme& scheme, const PolicyId& verbatim_policy) {
  std::istringstream stream(raw);
  std::string line;
  std::size_t line_no = 0;

  enum class TierKind { kNone, kHeader, kMain, kDependent };
  TierKind current = TierKind::kNone;
  bool current_kept = false;
  bool any_tier_matched = false;
  std::string kept_content;

  while (std::getline(stream, line)) {
    ++line_no;
    line = chomp(line);
    if (is_blank(line)) {
      current = TierKind::kNone;
      continue;
    }
    const char head = line[0];
    if (head == ' ' || head == '\t') {
      // Continuation of the previous tier.
      if (current == TierKind::kNone) {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": continuation line with no tier to continue");
      }
      if (current == TierKind::kMain && current_kept) {
        kept_content += ' ';
        kept_content += line;
      }
      continue;
    }
    if (head == '@') {
      current = TierKind::kHeader;
      current_kept = false;
      continue;
    }
    if (head == '*' || head == '%') {
      std::size_t colon = line.find(':');
      if (colon == std::string::npos || colon == 1) {
        throw ValidationError("line " + std::to_string(line_no) + ": malformed tier line '" +
                              line.substr(0, 32) + "'");
      }
      std::string code = line.substr(1, colon - 1);
      if (head == '%') {
        current = TierKind::kDependent;
        current_kept = false;
        continue;
      }
      current = TierKind::kMain;
      current_kept = tier_filter.count(code) > 0;
      if (current_kept) {
        any_tier_matched = true;
        kept_content += ' ';
        kept_content += line.substr(colon + 1);
      }
      continue;
    }
    throw ValidationError("line " + std::to_string(line_no) + ": unparseable structural line '" +
                          line.substr(0, 32) + "'");
  }

  std::vector<std::string> proto = clean_tier_tokens(kept_content);
  std::string joined;
  for (std::size_t i = 0; i < proto.size(); ++i) {
    if (i > 0) joined += ' ';
    joined += proto[i];
  }

  ChatParseResult result;
  result.transcript.tokens = tokenize(joined, scheme);
  // Spans point into the cleaned stream, not the CHAT source; drop them.
  for (Token& t : result.transcript.tokens) {
    t.source_span.reset();
  }
  result.transcript.policy = verbatim_policy;
  result.empty_warning = !any_tier_matched;
  return result;
}

ChatHeaderInfo parse_chat_headers(const std::string& raw) {
  ChatHeaderInfo info;
  std::istringstream stream(raw);
  std::string line;
  while (std::getline(stream, line)) {
    line = chomp(line);
    if (line.rfind("@ID:", 0) != 0) {
      continue;
    }
    std::string content = line.substr(4);
    // Trim leading separators.
    std::size_t start = content.find_first_not_of(" \t");
    if (start == std::string::npos) {
      continue;
    }
    content = content.substr(start);
    // language|corpus|code|age|sex|group|SES|role|education|custom|
    std::vector<std::string> fields;
    std::string field;
    for (char c : content) {
      if (c == '|') {
        fields.push_back(field);
        field.clear();
      } else {
        field += c;
      }
    }
    fields.push_back(field);
    if (fields.size() > 2 && !fields[2].empty()) {
      std::string group = fields.size() > 5 ? fields[5] : "";
      info.group_by_code[fields[2]] = group;
    }
  }
  return info;
}

}  // namespace convwer
