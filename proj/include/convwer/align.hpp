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

#ifndef CONVWER_ALIGN_HPP_
#define CONVWER_ALIGN_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "convwer/rational.hpp"
#include "convwer/types.hpp"

namespace convwer {

enum class EditKind {
  kMatch,
  kSubstitute,
  kDelete,  // reference token absent from the hypothesis
  kInsert,  // hypothesis token absent from the reference
};

const char* edit_kind_name(EditKind kind);

struct EditOp {
  EditKind kind;
  // Aligned token positions. Match/substitute carry both; delete carries
  // only ref_index; insert carries only hyp_index.
  std::optional<std::size_t> hyp_index;
  std::optional<std::size_t> ref_index;
};

// A minimum-cost alignment of a hypothesis into a reference under unit
// edit costs. Asymmetric by construction: the reference supplies N.
struct Alignment {
  std::vector<EditOp> ops;  // in sequence order
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t matches = 0;
  std::size_t ref_len = 0;  // N, always >= 1
  std::size_t hyp_len = 0;

  std::size_t errors() const { return substitutions + deletions + insertions; }
};

// Aligns hypothesis tokens against reference tokens by minimum edit
// distance. Tokens compare by normalized surface only; klass never
// affects matching. Ties in the backtrace resolve in the fixed order
// match > substitute > delete > insert, so equal-cost alignments are
// reproducible. Throws ValidationError if the reference is empty.
Alignment align(const std::vector<Token>& hyp, const std::vector<Token>& ref);
Alignment align(const Transcript& hyp, const Transcript& ref);

// WER = (S + D + I) / N, exact. Not clipped: more hypothesis than
// reference can push it past 1.
Rational wer(const Alignment& alignment);

// Per-operation rates (ins/N, del/N, sub/N). They sum to wer() exactly.
struct OperationRates {
  Rational insertion_rate;
  Rational deletion_rate;
  Rational substitution_rate;
};

OperationRates operation_rates(const Alignment& alignment);

// One dump line per op: kind, hyp_index, ref_index, hyp_token, ref_token,
// tab-separated, empty where an index does not apply. Useful both for
// debugging and as input to anchored inter-reference computations.
std::string format_alignment_dump(const Alignment& alignment, const std::vector<Token>& hyp,
                                  const std::vector<Token>& ref);

}  // namespace convwer

#endif  // CONVWER_ALIGN_HPP_
