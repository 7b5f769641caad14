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

#include "convwer/textnorm.hpp"

#include <algorithm>
#include <cctype>

#include "convwer/errors.hpp"

namespace convwer {

const std::set<std::string>& default_filler_lexicon() {
  static const std::set<std::string> kFillers = {"um", "uh", "er", "ah", "mm", "hm", "mhm"};
  return kFillers;
}

const std::vector<std::string>& default_hedge_lexicon() {
  static const std::vector<std::string> kHedges = {"i think", "i believe", "i guess",
                                                   "maybe",   "sort of",   "kind of"};
  return kHedges;
}

namespace {

bool is_space_byte(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Bytes >= 0x80 are UTF-8 continuation/lead bytes; treat them as letters
// so non-ASCII words pass through unmangled.
bool is_word_byte(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) != 0;
}

std::string lowercase_ascii(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u < 0x80) {
      c = static_cast<char>(std::tolower(u));
    }
  }
  return out;
}

// Normalizes one whitespace-free chunk. Reports whether a cut-off dash
// trailed the word ("go--"), which marks a fragment.
std::string normalize_chunk(const std::string& raw, const NormalizationScheme& scheme,
                            bool* trailing_dash) {
  std::string s = scheme.lowercase ? lowercase_ascii(raw) : raw;
  if (trailing_dash != nullptr) {
    // A dash run at the end of the word (possibly under terminal
    // punctuation: "go--," still counts) signals a cut-off.
    std::size_t end = s.size();
    while (end > 0 && !is_word_byte(s[end - 1]) && s[end - 1] != '-') {
      --end;
    }
    std::size_t dash_end = end;
    while (end > 0 && s[end - 1] == '-') {
      --end;
    }
    *trailing_dash = end < dash_end && end > 0 && is_word_byte(s[end - 1]);
  }
  if (!scheme.strip_punctuation) {
    return s;
  }
  // Keep word bytes everywhere; keep ' and - only between word bytes.
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (is_word_byte(c)) {
      out += c;
    } else if ((c == '\'' || c == '-') && i > 0 && i + 1 < s.size() && is_word_byte(s[i - 1]) &&
               is_word_byte(s[i + 1])) {
      out += c;
    }
  }
  return out;
}

}  // namespace

std::string normalize_text(const std::string& raw, const NormalizationScheme& scheme) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  bool pending_space = false;
  bool emitted_any = false;
  while (i < raw.size()) {
    if (is_space_byte(raw[i])) {
      std::size_t start = i;
      while (i < raw.size() && is_space_byte(raw[i])) {
        ++i;
      }
      if (scheme.collapse_whitespace) {
        pending_space = true;
      } else if (emitted_any) {
        out += raw.substr(start, i - start);
      }
      continue;
    }
    std::size_t start = i;
    while (i < raw.size() && !is_space_byte(raw[i])) {
      ++i;
    }
    std::string chunk = raw.substr(start, i - start);
    // Keep marker prefixes intact; they carry token-class information.
    std::string prefix;
    if (chunk.rfind("&-", 0) == 0 || chunk.rfind("&+", 0) == 0) {
      prefix = chunk.substr(0, 2);
      chunk = chunk.substr(2);
    }
    std::string cooked = normalize_chunk(chunk, scheme, nullptr);
    if (cooked.empty() && prefix.empty()) {
      continue;  // chunk was pure punctuation
    }
    if (pending_space && emitted_any) {
      out += ' ';
    }
    pending_space = false;
    emitted_any = true;
    out += prefix + cooked;
  }
  return out;
}

std::vector<Token> tokenize(const std::string& raw, const NormalizationScheme& scheme,
                            const std::set<std::string>& filler_lexicon) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < raw.size()) {
    if (is_space_byte(raw[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < raw.size() && !is_space_byte(raw[i])) {
      ++i;
    }
    std::string chunk = raw.substr(start, i - start);

    TokenKlass klass = TokenKlass::kWord;
    bool marked = false;
    if (chunk.rfind("&-", 0) == 0) {
      klass = TokenKlass::kFiller;
      marked = true;
      chunk = chunk.substr(2);
    } else if (chunk.rfind("&+", 0) == 0) {
      klass = TokenKlass::kFragment;
      marked = true;
      chunk = chunk.substr(2);
    }

    bool trailing_dash = false;
    std::string surface = normalize_chunk(chunk, scheme, &trailing_dash);
    if (surface.empty()) {
      continue;
    }
    if (!marked) {
      if (trailing_dash) {
        klass = TokenKlass::kFragment;
      } else if (filler_lexicon.count(surface) > 0) {
        klass = TokenKlass::kFiller;
      }
    }
    Token token(surface, klass);
    token.source_span = std::make_pair(start, i);
    tokens.push_back(std::move(token));
  }
  return tokens;
}

ConventionRuleSet default_rules(const PolicyId& policy) {
  ConventionRuleSet rules;
  rules.policy = policy;
  switch (policy.kind) {
    case PolicyKind::kVerbatim:
    case PolicyKind::kCustom:
      break;
    case PolicyKind::kNonVerbatim:
      rules.remove_fillers = true;
      rules.remove_fragments = true;
      rules.collapse_immediate_repetitions = true;
      break;
    case PolicyKind::kLegal:
      rules.remove_fillers = true;
      rules.remove_fragments = true;
      rules.preserve_hedges = true;
      break;
  }
  return rules;
}

void check_rules(const ConventionRuleSet& rules) {
  if (rules.policy.kind == PolicyKind::kVerbatim) {
    if (rules.remove_fillers || rules.remove_fragments || rules.collapse_immediate_repetitions) {
      throw ValidationError("rule set for verbatim policy '" + rules.policy.name +
                            "' must be an identity transform");
    }
  }
  if (rules.policy.kind == PolicyKind::kLegal) {
    if (!rules.preserve_hedges || !rules.remove_fragments) {
      throw ValidationError("rule set for legal policy '" + rules.policy.name +
                            "' must preserve hedges and remove fragments");
    }
  }
}

std::vector<bool> hedge_protection(const std::vector<Token>& tokens,
                                   const std::vector<std::string>& hedge_lexicon,
                                   const NormalizationScheme& scheme) {
  // Phrases compare by normalized surface, longest first so "sort of a"
  // would win over "sort of" at the same position.
  std::vector<std::vector<std::string>> phrases;
  for (const std::string& phrase : hedge_lexicon) {
    std::vector<std::string> words;
    for (const Token& t : tokenize(phrase, scheme)) {
      words.push_back(t.surface);
    }
    if (!words.empty()) {
      phrases.push_back(std::move(words));
    }
  }
  std::sort(phrases.begin(), phrases.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });

  std::vector<bool> protected_at(tokens.size(), false);
  std::size_t i = 0;
  while (i < tokens.size()) {
    bool matched = false;
    for (const auto& phrase : phrases) {
      if (i + phrase.size() > tokens.size()) {
        continue;
      }
      bool equal = true;
      for (std::size_t k = 0; k < phrase.size(); ++k) {
        if (tokens[i + k].surface != phrase[k]) {
          equal = false;
          break;
        }
      }
      if (equal) {
        for (std::size_t k = 0; k < phrase.size(); ++k) {
          protected_at[i + k] = true;
        }
        i += phrase.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      ++i;
    }
  }
  return protected_at;
}

namespace {

bool is_filler_token(const Token& t, const ConventionRuleSet& rules) {
  return t.klass == TokenKlass::kFiller || rules.filler_lexicon.count(t.surface) > 0;
}

bool is_fragment_token(const Token& t) { return t.klass == TokenKlass::kFragment; }

std::vector<bool> protection_for(const std::vector<Token>& tokens, const ConventionRuleSet& rules,
                                 const NormalizationScheme& scheme) {
  if (!rules.preserve_hedges) {
    return std::vector<bool>(tokens.size(), false);
  }
  return hedge_protection(tokens, rules.hedge_lexicon, scheme);
}

}  // namespace

Transcript derive_convention(const Transcript& verbatim, const ConventionRuleSet& rules,
                             const NormalizationScheme& scheme) {
  if (!verbatim.policy.has_value()) {
    throw ValidationError("derive_convention: input transcript carries no policy");
  }
  if (verbatim.policy->kind != PolicyKind::kVerbatim) {
    throw ValidationError("derive_convention: input transcript must be verbatim, got policy '" +
                          verbatim.policy->name + "'");
  }
  check_rules(rules);

  std::vector<Token> tokens = verbatim.tokens;

  // One rewrite loop for all three transforms: each step removes the
  // first token validate_convention would flag (for repetitions, the
  // earlier copy) and recomputes hedge protection. Removing a token can
  // both create protection, by making a hedge phrase contiguous, and
  // create violations, by making equal words adjacent; per-step
  // recomputation handles both, so the fixpoint is violation-free under
  // the same rules by construction.
  for (;;) {
    std::vector<bool> prot = protection_for(tokens, rules, scheme);
    std::size_t remove_at = tokens.size();
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (prot[i]) {
        continue;
      }
      if ((rules.remove_fillers && is_filler_token(tokens[i], rules)) ||
          (rules.remove_fragments && is_fragment_token(tokens[i])) ||
          (rules.collapse_immediate_repetitions && i + 1 < tokens.size() &&
           tokens[i].surface == tokens[i + 1].surface)) {
        remove_at = i;
        break;
      }
    }
    if (remove_at == tokens.size()) {
      break;
    }
    tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(remove_at));
  }

  if (rules.preserve_hedges) {
    std::vector<bool> prot = hedge_protection(tokens, rules.hedge_lexicon, scheme);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (prot[i]) {
        tokens[i].klass = TokenKlass::kHedgeMarker;
      }
    }
  }

  Transcript out;
  out.tokens = std::move(tokens);
  out.policy = rules.policy;
  return out;
}

std::vector<ConventionViolation> validate_convention(const Transcript& transcript,
                                                     const ConventionRuleSet& rules,
                                                     const NormalizationScheme& scheme) {
  check_rules(rules);
  const std::vector<Token>& tokens = transcript.tokens;
  std::vector<bool> prot = protection_for(tokens, rules, scheme);

  std::vector<ConventionViolation> violations;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (prot[i]) {
      continue;
    }
    if (rules.remove_fillers && is_filler_token(tokens[i], rules)) {
      violations.push_back({i, "filler"});
    } else if (rules.remove_fragments && is_fragment_token(tokens[i])) {
      violations.push_back({i, "fragment"});
    } else if (rules.collapse_immediate_repetitions && i + 1 < tokens.size() &&
               tokens[i].surface == tokens[i + 1].surface) {
      violations.push_back({i, "immediate repetition"});
    }
  }
  return violations;
}

}  // namespace convwer
