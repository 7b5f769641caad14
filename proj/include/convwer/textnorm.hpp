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

#ifndef CONVWER_TEXTNORM_HPP_
#define CONVWER_TEXTNORM_HPP_

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "convwer/types.hpp"

namespace convwer {

// Surface normalization applied before any comparison. Applying a scheme
// twice equals applying it once.
struct NormalizationScheme {
  bool lowercase = true;
  bool strip_punctuation = true;
  bool collapse_whitespace = true;
  // Digits are never rewritten either way; `as_written` is the default,
  // `none` is accepted and reserved for schemes that add number handling.
  enum class NumberStyle { kAsWritten, kNone } number_style = NumberStyle::kAsWritten;
};

// Filled pauses recognized without markup: um uh er ah mm hm mhm.
const std::set<std::string>& default_filler_lexicon();

// Hedge phrases the legal convention must keep intact:
// "i think", "i believe", "i guess", "maybe", "sort of", "kind of".
const std::vector<std::string>& default_hedge_lexicon();

// Normalizes a raw string under the scheme (text to text, idempotent).
std::string normalize_text(const std::string& raw, const NormalizationScheme& scheme);

// Splits raw text into normalized tokens and assigns token classes.
//
// Inline markers follow transcription practice and survive manifest round
// trips: "&-um" is a filler, "&+go" a fragment, and a trailing cut-off
// dash ("go--") also marks a fragment. Unmarked surfaces found in the
// filler lexicon are fillers; everything else is a word. Tokens that
// normalize to nothing are dropped. source_span records each token's byte
// range in `raw`.
std::vector<Token> tokenize(const std::string& raw, const NormalizationScheme& scheme,
                            const std::set<std::string>& filler_lexicon = default_filler_lexicon());

// How to rewrite a verbatim transcript into a target convention. All
// transforms only delete tokens, so outputs are subsequences of inputs.
struct ConventionRuleSet {
  PolicyId policy;
  std::set<std::string> filler_lexicon = default_filler_lexicon();
  bool remove_fillers = false;
  bool collapse_immediate_repetitions = false;
  bool remove_fragments = false;
  std::vector<std::string> hedge_lexicon = default_hedge_lexicon();
  bool preserve_hedges = false;
};

// Builtin rule sets: verbatim keeps everything; nonverbatim removes
// fillers and fragments and collapses immediate repetitions; legal
// removes fragments and fillers outside hedge phrases and preserves hedge
// phrases verbatim.
ConventionRuleSet default_rules(const PolicyId& policy);

// Kind/flag consistency: verbatim-kind rules must not remove anything;
// legal-kind rules must preserve hedges and remove fragments. Throws
// ValidationError on violation.
void check_rules(const ConventionRuleSet& rules);

// Hedge-phrase occurrences in a token sequence: exact phrase match over
// normalized surfaces, longest match first, left to right, non-
// overlapping. Returns one flag per token (true = inside a hedge span).
std::vector<bool> hedge_protection(const std::vector<Token>& tokens,
                                   const std::vector<std::string>& hedge_lexicon,
                                   const NormalizationScheme& scheme);

// Rewrites a verbatim transcript into the rule set's convention.
// Preconditions: `verbatim.policy` is verbatim-kind and the rules pass
// check_rules(). The output carries rules.policy and always validates
// clean against the same rules. Tokens kept because a hedge span covers
// them are re-tagged kHedgeMarker.
Transcript derive_convention(const Transcript& verbatim, const ConventionRuleSet& rules,
                             const NormalizationScheme& scheme = NormalizationScheme{});

struct ConventionViolation {
  std::size_t token_index;
  std::string reason;  // "filler", "fragment", "immediate repetition"
};

// Lists the tokens a rule set would have removed. Empty result means the
// transcript already conforms to the convention.
std::vector<ConventionViolation> validate_convention(
    const Transcript& transcript, const ConventionRuleSet& rules,
    const NormalizationScheme& scheme = NormalizationScheme{});

}  // namespace convwer

#endif  // CONVWER_TEXTNORM_HPP_
