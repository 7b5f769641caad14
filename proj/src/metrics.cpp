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

#include "convwer/metrics.hpp"

#include <algorithm>
#include <map>

#include "convwer/errors.hpp"

namespace convwer {

const char* eid_mode_name(EidMode mode) {
  switch (mode) {
    case EidMode::kAggregate:
      return "aggregate";
    case EidMode::kPerUtterance:
      return "per_utterance";
  }
  return "aggregate";
}

GroupPolicyWer group_wer(const std::string& system_id, const std::string& group,
                         const PolicyId& policy, const std::vector<UtteranceScore>& scores) {
  if (scores.empty()) {
    throw ValidationError("group_wer: no utterances for system '" + system_id + "', group '" +
                          group + "', policy '" + policy.name + "'");
  }
  GroupPolicyWer out;
  out.system_id = system_id;
  out.group = group;
  out.policy = policy;
  out.n_utterances = scores.size();
  Rational wer_sum = 0;
  Rational ins_sum = 0;
  Rational del_sum = 0;
  Rational sub_sum = 0;
  for (const UtteranceScore& s : scores) {
    wer_sum += s.wer_value;
    ins_sum += s.rates.insertion_rate;
    del_sum += s.rates.deletion_rate;
    sub_sum += s.rates.substitution_rate;
  }
  const Rational n(static_cast<unsigned long long>(scores.size()));
  out.mean_wer = wer_sum / n;
  out.mean_ins = ins_sum / n;
  out.mean_del = del_sum / n;
  out.mean_sub = sub_sum / n;
  return out;
}

namespace {

void check_per_policy(const PerPolicyScores& per_policy, const PolicyId& enforced) {
  if (per_policy.empty()) {
    throw ValidationError("eid: empty policy set");
  }
  const std::size_t n = per_policy.front().second.size();
  if (n == 0) {
    throw ValidationError("eid: no utterances");
  }
  bool enforced_present = false;
  for (const auto& [policy, column] : per_policy) {
    if (column.size() != n) {
      throw ValidationError("eid: per-policy score columns disagree in length (policy '" +
                            policy.name + "')");
    }
    if (policy == enforced) {
      enforced_present = true;
    }
  }
  if (!enforced_present) {
    throw ValidationError("eid: enforced policy '" + enforced.name +
                          "' is not among the scored policies");
  }
}

}  // namespace

EidResult eid(const std::string& system_id, const std::string& group,
              const PerPolicyScores& per_policy, const PolicyId& enforced, EidMode mode) {
  check_per_policy(per_policy, enforced);
  const std::size_t n = per_policy.front().second.size();

  EidResult out;
  out.system_id = system_id;
  out.group = group;
  out.enforced_policy = enforced;
  out.mode = mode;

  if (mode == EidMode::kAggregate) {
    // Mean per policy first, then compare means.
    Rational enforced_mean;
    const PolicyId* best = nullptr;
    Rational best_mean;
    for (const auto& [policy, column] : per_policy) {
      Rational mean = rational_mean(column);
      if (policy == enforced) {
        enforced_mean = mean;
      }
      if (best == nullptr || mean < best_mean) {
        best = &policy;
        best_mean = mean;
      }
    }
    out.best_policy = *best;
    out.eid = enforced_mean - best_mean;
    return out;
  }

  // Per-utterance: average the per-utterance penalty, credit every policy
  // that attains an utterance's minimum, and report the most frequent
  // achiever (column order breaks ties).
  const std::vector<Rational>* enforced_column = nullptr;
  for (const auto& [policy, column] : per_policy) {
    if (policy == enforced) {
      enforced_column = &column;
    }
  }
  std::vector<std::size_t> achieve_count(per_policy.size(), 0);
  Rational penalty_sum = 0;
  for (std::size_t x = 0; x < n; ++x) {
    Rational min_x = per_policy.front().second[x];
    for (const auto& [policy, column] : per_policy) {
      min_x = std::min(min_x, column[x]);
    }
    penalty_sum += (*enforced_column)[x] - min_x;
    for (std::size_t p = 0; p < per_policy.size(); ++p) {
      if (per_policy[p].second[x] == min_x) {
        ++achieve_count[p];
      }
    }
  }
  std::size_t best_index = 0;
  for (std::size_t p = 1; p < per_policy.size(); ++p) {
    if (achieve_count[p] > achieve_count[best_index]) {
      best_index = p;
    }
  }
  out.best_policy = per_policy[best_index].first;
  out.eid = penalty_sum / Rational(static_cast<unsigned long long>(n));
  return out;
}

DeltaEidResult delta_eid(const EidResult& a, const EidResult& b) {
  if (a.system_id != b.system_id) {
    throw ValidationError("delta_eid: system mismatch ('" + a.system_id + "' vs '" + b.system_id +
                          "')");
  }
  if (a.enforced_policy != b.enforced_policy) {
    throw ValidationError("delta_eid: enforced policy mismatch ('" + a.enforced_policy.name +
                          "' vs '" + b.enforced_policy.name + "')");
  }
  if (a.mode != b.mode) {
    throw ValidationError("delta_eid: mode mismatch");
  }
  DeltaEidResult out;
  out.system_id = a.system_id;
  out.group_a = a.group;
  out.group_b = b.group;
  out.enforced_policy = a.enforced_policy;
  out.mode = a.mode;
  out.delta = a.eid - b.eid;
  return out;
}

GapResult hermeneutical_gap(const std::string& group, const PolicyId& dominant,
                            const PolicyId& community,
                            const std::vector<const Transcript*>& dominant_refs,
                            const std::vector<const Transcript*>& community_refs) {
  if (dominant_refs.empty() || dominant_refs.size() != community_refs.size()) {
    throw ValidationError("hermeneutical_gap: reference lists empty or mismatched for group '" +
                          group + "'");
  }
  // The dominant convention is the reference side: its transcript
  // supplies the denominator, the community transcript is read as the
  // hypothesis.
  Rational sum = 0;
  for (std::size_t i = 0; i < dominant_refs.size(); ++i) {
    Alignment a = align(community_refs[i]->tokens, dominant_refs[i]->tokens);
    sum += wer(a);
  }
  GapResult out;
  out.group = group;
  out.dominant_policy = dominant;
  out.community_policy = community;
  out.gap = sum / Rational(static_cast<unsigned long long>(dominant_refs.size()));
  return out;
}

RangeResult wer_range(const std::string& system_id, const std::string& group,
                      const std::vector<std::pair<PolicyId, Rational>>& mean_wer_by_policy) {
  if (mean_wer_by_policy.empty()) {
    throw ValidationError("wer_range: empty WER-Set");
  }
  RangeResult out;
  out.system_id = system_id;
  out.group = group;
  out.wer_set = mean_wer_by_policy;
  out.range_min = mean_wer_by_policy.front().second;
  out.range_max = mean_wer_by_policy.front().second;
  for (const auto& [policy, value] : mean_wer_by_policy) {
    out.range_min = std::min(out.range_min, value);
    out.range_max = std::max(out.range_max, value);
  }
  out.width = out.range_max - out.range_min;
  return out;
}

FairnessGap fairness_gap(const GroupPolicyWer& a, const GroupPolicyWer& b) {
  if (a.system_id != b.system_id) {
    throw ValidationError("fairness_gap: system mismatch ('" + a.system_id + "' vs '" +
                          b.system_id + "')");
  }
  if (a.policy != b.policy) {
    throw ValidationError("fairness_gap: policy mismatch ('" + a.policy.name + "' vs '" +
                          b.policy.name + "')");
  }
  FairnessGap out;
  out.system_id = a.system_id;
  out.policy = a.policy;
  out.group_a = a.group;
  out.group_b = b.group;
  out.gap = a.mean_wer - b.mean_wer;
  return out;
}

InterReferenceDistance inter_reference_distance(const Transcript& ref_a, const Transcript& ref_b,
                                                const Transcript* anchor_hyp) {
  InterReferenceDistance out;
  out.direct = wer(align(ref_a.tokens, ref_b.tokens));
  if (anchor_hyp == nullptr) {
    return out;
  }

  // Compose the anchor's two alignments. For each anchor token, record
  // which reference token it sits diagonally against (match or
  // substitute) on each side.
  struct DiagonalPair {
    std::size_t ref_index;
    bool is_match;
  };
  auto diagonal_pairs = [](const Alignment& alignment) {
    std::map<std::size_t, DiagonalPair> by_anchor_index;
    for (const EditOp& op : alignment.ops) {
      if (op.kind == EditKind::kMatch || op.kind == EditKind::kSubstitute) {
        by_anchor_index[*op.hyp_index] = {*op.ref_index, op.kind == EditKind::kMatch};
      }
    }
    return by_anchor_index;
  };
  Alignment to_a = align(anchor_hyp->tokens, ref_a.tokens);
  Alignment to_b = align(anchor_hyp->tokens, ref_b.tokens);
  auto pairs_a = diagonal_pairs(to_a);
  auto pairs_b = diagonal_pairs(to_b);

  std::vector<bool> paired_a(ref_a.tokens.size(), false);
  std::vector<bool> paired_b(ref_b.tokens.size(), false);
  std::size_t substitutions = 0;
  for (const auto& [anchor_index, pa] : pairs_a) {
    auto it = pairs_b.find(anchor_index);
    if (it == pairs_b.end()) {
      continue;
    }
    paired_a[pa.ref_index] = true;
    paired_b[it->second.ref_index] = true;
    // Both sides matching the same anchor token means the pair agrees;
    // any other co-pairing conflicts and scores as a substitution.
    if (!(pa.is_match && it->second.is_match)) {
      ++substitutions;
    }
  }
  std::size_t deletions = 0;
  for (bool p : paired_b) {
    if (!p) ++deletions;
  }
  std::size_t insertions = 0;
  for (bool p : paired_a) {
    if (!p) ++insertions;
  }
  out.anchored = Rational(static_cast<unsigned long long>(substitutions + deletions + insertions),
                          static_cast<unsigned long long>(ref_b.tokens.size()));
  return out;
}

Rational decomposition_residual_pp(const std::string& wer_pct, const std::string& ins_pct,
                                   const std::string& del_pct, const std::string& sub_pct) {
  Rational residual = rational_from_decimal(ins_pct) + rational_from_decimal(del_pct) +
                      rational_from_decimal(sub_pct) - rational_from_decimal(wer_pct);
  return boost::multiprecision::abs(residual);
}

Rational range_residual_pp(const std::string& min_pct, const std::string& max_pct,
                           const std::string& width_pp) {
  Rational residual = rational_from_decimal(max_pct) - rational_from_decimal(min_pct) -
                      rational_from_decimal(width_pp);
  return boost::multiprecision::abs(residual);
}

}  // namespace convwer
