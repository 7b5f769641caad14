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

#ifndef CONVWER_METRICS_HPP_
#define CONVWER_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "convwer/align.hpp"
#include "convwer/rational.hpp"
#include "convwer/types.hpp"

namespace convwer {

// Per-utterance scores for one (system, policy) slice, in corpus order.
struct UtteranceScore {
  std::string utterance_id;
  Rational wer_value;
  OperationRates rates;
};

// Utterance-averaged aggregate for one (system, group, policy) cell. The
// group label is empty for whole-corpus (system-level) aggregates. Means
// are plain averages over utterances, not error-pooled ratios, and
// mean_ins + mean_del + mean_sub == mean_wer exactly.
struct GroupPolicyWer {
  std::string system_id;
  std::string group;
  PolicyId policy;
  std::size_t n_utterances = 0;
  Rational mean_wer;
  Rational mean_ins;
  Rational mean_del;
  Rational mean_sub;
};

GroupPolicyWer group_wer(const std::string& system_id, const std::string& group,
                         const PolicyId& policy, const std::vector<UtteranceScore>& scores);

// Per-utterance WER columns for each policy, configured order preserved.
// All columns must be the same length (same utterances, same order).
using PerPolicyScores = std::vector<std::pair<PolicyId, std::vector<Rational>>>;

enum class EidMode {
  // mean over policies first: mean_wer(enforced) - min_p mean_wer(p).
  // This is the arithmetic the published aggregate tables follow.
  kAggregate,
  // mean of per-utterance penalties: avg_x [wer_x(enforced) - min_p wer_x(p)].
  // Never below the aggregate value.
  kPerUtterance,
};

const char* eid_mode_name(EidMode mode);

// Enforcement-induced deficit: the WER a slice pays because one
// convention is enforced instead of each slice's most favorable one.
struct EidResult {
  std::string system_id;
  std::string group;  // empty for system-level
  PolicyId enforced_policy;
  PolicyId best_policy;
  EidMode mode;
  Rational eid;  // >= 0 always
};

// Computes EID for one slice. `enforced` must be one of the columns.
// best_policy is the argmin of means (aggregate) or the most frequent
// per-utterance argmin (per-utterance), ties broken by column order.
EidResult eid(const std::string& system_id, const std::string& group,
              const PerPolicyScores& per_policy, const PolicyId& enforced, EidMode mode);

struct DeltaEidResult {
  std::string system_id;
  std::string group_a;
  std::string group_b;
  PolicyId enforced_policy;
  EidMode mode;
  Rational delta;  // eid(a) - eid(b); antisymmetric in (a, b)
};

// Both inputs must share system, enforced policy, and mode.
DeltaEidResult delta_eid(const EidResult& a, const EidResult& b);

// How far one group's community convention sits from the dominant one,
// measured as utterance-averaged WER between the two reference
// transcripts. The dominant policy's transcript is the reference side and
// supplies the denominator; the community transcript plays the hypothesis
// role. Both vectors run in corpus order.
struct GapResult {
  std::string group;
  PolicyId dominant_policy;
  PolicyId community_policy;
  Rational gap;
};

GapResult hermeneutical_gap(const std::string& group, const PolicyId& dominant,
                            const PolicyId& community,
                            const std::vector<const Transcript*>& dominant_refs,
                            const std::vector<const Transcript*>& community_refs);

// The spread of a slice's mean WER across conventions.
struct RangeResult {
  std::string system_id;
  std::string group;  // empty for system-level
  // Mean WER per policy, configured order (the WER-Set).
  std::vector<std::pair<PolicyId, Rational>> wer_set;
  Rational range_min;
  Rational range_max;
  Rational width;  // max - min
};

RangeResult wer_range(const std::string& system_id, const std::string& group,
                      const std::vector<std::pair<PolicyId, Rational>>& mean_wer_by_policy);

// Difference of two group means under the same system and policy:
// a.mean_wer - b.mean_wer. Mismatched system or policy is an error.
struct FairnessGap {
  std::string system_id;
  PolicyId policy;
  std::string group_a;
  std::string group_b;
  Rational gap;
};

FairnessGap fairness_gap(const GroupPolicyWer& a, const GroupPolicyWer& b);

// Distance between two reference conventions for the same utterance.
//
// direct: WER of ref_a read as the hypothesis against ref_b (ref_b is the
// denominator).
//
// anchored (optional, needs a shared hypothesis to anchor on): compose
// the anchor's alignments to both references. Reference token pairs
// matched to the same anchor token count as matches; diagonal co-
// pairings that are not both matches conflict and count as
// substitutions; leftover ref_b tokens are deletions and leftover ref_a
// tokens insertions; denominator |ref_b|.
struct InterReferenceDistance {
  Rational direct;
  std::optional<Rational> anchored;
};

InterReferenceDistance inter_reference_distance(const Transcript& ref_a, const Transcript& ref_b,
                                                const Transcript* anchor_hyp = nullptr);

// Consistency checks for published aggregate tables (rates in percent,
// given as decimal strings so no float fuzz enters). Returns the exact
// absolute residual of the identity; callers decide what tolerance the
// table's rounding justifies.
Rational decomposition_residual_pp(const std::string& wer_pct, const std::string& ins_pct,
                                   const std::string& del_pct, const std::string& sub_pct);
Rational range_residual_pp(const std::string& min_pct, const std::string& max_pct,
                           const std::string& width_pp);

}  // namespace convwer

#endif  // CONVWER_METRICS_HPP_
