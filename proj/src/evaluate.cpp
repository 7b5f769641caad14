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

#include "convwer/evaluate.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "convwer/align.hpp"
#include "convwer/errors.hpp"
#include "convwer/metrics.hpp"
#include "convwer/version.hpp"

namespace convwer {

namespace {

// Everything one (system, utterance) task produces, one slot per policy
// in configured order. Slots are written by task index, never appended,
// so the reduce below sees the same order at any worker count.
struct TaskResult {
  std::vector<Rational> wers;
  std::vector<OperationRates> rates;
  std::string dump;
};

std::string prefixed_dump(const std::string& system_id, const std::string& utterance_id,
                          const std::string& policy_name, const std::string& dump) {
  std::string out;
  std::size_t start = 0;
  while (start < dump.size()) {
    std::size_t end = dump.find('\n', start);
    if (end == std::string::npos) {
      end = dump.size();
    }
    out += system_id;
    out += '\t';
    out += utterance_id;
    out += '\t';
    out += policy_name;
    out += '\t';
    out.append(dump, start, end - start);
    out += '\n';
    start = end + 1;
  }
  return out;
}

void validate_completeness(const Corpus& corpus,
                           const std::map<std::string, std::map<std::string, Hypothesis>>& systems,
                           const std::vector<PolicyId>& policy_set) {
  if (corpus.utterances.empty()) {
    throw ValidationError("corpus has no utterances");
  }
  if (systems.empty()) {
    throw ValidationError("no hypotheses: at least one system is required");
  }
  for (const Utterance& utt : corpus.utterances) {
    auto refs = corpus.references.find(utt.utterance_id);
    if (refs == corpus.references.end()) {
      throw ValidationError("corpus has no references for utterance '" + utt.utterance_id + "'");
    }
    for (const PolicyId& policy : policy_set) {
      if (refs->second.count(policy.name) == 0) {
        throw ValidationError("utterance '" + utt.utterance_id + "' has no reference for policy '" +
                              policy.name + "'");
      }
    }
  }
  for (const auto& [system_id, hyps] : systems) {
    for (const Utterance& utt : corpus.utterances) {
      if (hyps.count(utt.utterance_id) == 0) {
        throw ValidationError("system '" + system_id + "' has no hypothesis for utterance '" +
                              utt.utterance_id + "'");
      }
    }
    for (const auto& [utterance_id, hyp] : hyps) {
      if (corpus.references.count(utterance_id) == 0) {
        throw ValidationError("system '" + system_id + "' has a hypothesis for utterance '" +
                              utterance_id + "', which is not in the corpus");
      }
    }
  }
}

}  // namespace

EvaluateOutput evaluate_with_dump(
    const Corpus& corpus, const std::map<std::string, std::map<std::string, Hypothesis>>& systems,
    const RunConfig& config, const EvaluateOptions& options) {
  const std::vector<PolicyId>& policies = config.policy_set;
  validate_completeness(corpus, systems, policies);

  std::vector<std::string> system_ids;
  system_ids.reserve(systems.size());
  for (const auto& [system_id, hyps] : systems) {
    system_ids.push_back(system_id);
  }

  const std::size_t n_utts = corpus.utterances.size();
  const std::size_t n_tasks = system_ids.size() * n_utts;
  std::vector<TaskResult> results(n_tasks);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto run_task = [&](std::size_t task) {
    const std::size_t sys_idx = task / n_utts;
    const std::size_t utt_idx = task % n_utts;
    const std::string& system_id = system_ids[sys_idx];
    const Utterance& utt = corpus.utterances[utt_idx];
    const Hypothesis& hyp = systems.at(system_id).at(utt.utterance_id);
    const ReferenceSet& refs = corpus.references.at(utt.utterance_id);

    TaskResult& slot = results[task];
    slot.wers.reserve(policies.size());
    slot.rates.reserve(policies.size());
    for (const PolicyId& policy : policies) {
      const Transcript& ref = refs.at(policy.name);
      Alignment alignment = align(hyp.transcript, ref);
      slot.wers.push_back(wer(alignment));
      slot.rates.push_back(operation_rates(alignment));
      if (options.dump_alignments) {
        slot.dump += prefixed_dump(
            system_id, utt.utterance_id, policy.name,
            format_alignment_dump(alignment, hyp.transcript.tokens, ref.tokens));
      }
    }
  };

  auto worker = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      std::size_t task = next.fetch_add(1, std::memory_order_relaxed);
      if (task >= n_tasks) {
        return;
      }
      try {
        run_task(task);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
        }
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  unsigned n_workers = options.workers != 0 ? options.workers : std::thread::hardware_concurrency();
  if (n_workers == 0) {
    n_workers = 1;
  }
  if (static_cast<std::size_t>(n_workers) > n_tasks) {
    n_workers = static_cast<unsigned>(n_tasks);
  }
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned i = 0; i < n_workers; ++i) {
      pool.emplace_back(worker);
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }

  // Sequential reduce, in (system, slice, policy) order. Every container
  // below iterates in a deterministic order, so emitted bytes never
  // depend on scheduling.
  EvaluateOutput output;
  EvaluationReport& report = output.report;
  report.run_metadata.toolkit_version = kVersion;
  report.run_metadata.config_digest = config.config_digest;
  report.run_metadata.timestamp = options.timestamp;
  report.policy_set = policies;
  report.enforced_policy = config.policy(config.enforced_policy);
  report.eid_mode = config.eid_mode;
  report.group_vocabulary = config.group_vocabulary;

  // Groups that actually occur, in sorted (vocabulary) order.
  std::vector<std::string> present_groups;
  for (const std::string& group : config.group_vocabulary) {
    for (const Utterance& utt : corpus.utterances) {
      if (utt.group == group) {
        present_groups.push_back(group);
        break;
      }
    }
  }

  const PolicyId& enforced = report.enforced_policy;
  for (std::size_t sys_idx = 0; sys_idx < system_ids.size(); ++sys_idx) {
    const std::string& system_id = system_ids[sys_idx];

    // Slices: whole corpus first (empty group label), then each group.
    std::vector<std::string> slices;
    slices.push_back("");
    slices.insert(slices.end(), present_groups.begin(), present_groups.end());

    std::map<std::string, EidResult> eid_by_group;
    std::map<std::string, std::map<std::string, GroupPolicyWer>> wer_by_group_policy;

    for (const std::string& slice : slices) {
      std::vector<std::size_t> utt_indices;
      for (std::size_t i = 0; i < n_utts; ++i) {
        if (slice.empty() || corpus.utterances[i].group == slice) {
          utt_indices.push_back(i);
        }
      }

      PerPolicyScores per_policy;
      std::vector<std::pair<PolicyId, Rational>> mean_by_policy;
      for (std::size_t p = 0; p < policies.size(); ++p) {
        std::vector<UtteranceScore> scores;
        std::vector<Rational> wer_column;
        scores.reserve(utt_indices.size());
        wer_column.reserve(utt_indices.size());
        for (std::size_t i : utt_indices) {
          const TaskResult& slot = results[sys_idx * n_utts + i];
          scores.push_back(UtteranceScore{corpus.utterances[i].utterance_id, slot.wers[p],
                                          slot.rates[p]});
          wer_column.push_back(slot.wers[p]);
        }
        GroupPolicyWer row = group_wer(system_id, slice, policies[p], scores);
        mean_by_policy.emplace_back(policies[p], row.mean_wer);
        if (!slice.empty()) {
          wer_by_group_policy[slice][policies[p].name] = row;
        }
        report.wer_matrix.push_back(std::move(row));
        per_policy.emplace_back(policies[p], std::move(wer_column));
      }

      EidResult eid_row = eid(system_id, slice, per_policy, enforced, config.eid_mode);
      if (!slice.empty()) {
        eid_by_group.emplace(slice, eid_row);
      }
      report.eid_table.push_back(std::move(eid_row));
      report.range_table.push_back(wer_range(system_id, slice, mean_by_policy));
    }

    // Pairwise group contrasts, later group minus earlier group, so the
    // builtin vocabulary reads "aphasia minus control".
    for (std::size_t a = 1; a < present_groups.size(); ++a) {
      for (std::size_t b = 0; b < a; ++b) {
        report.delta_eid_table.push_back(
            delta_eid(eid_by_group.at(present_groups[a]), eid_by_group.at(present_groups[b])));
      }
    }
    for (const PolicyId& policy : policies) {
      for (std::size_t a = 1; a < present_groups.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b) {
          report.fairness_gaps.push_back(
              fairness_gap(wer_by_group_policy.at(present_groups[a]).at(policy.name),
                           wer_by_group_policy.at(present_groups[b]).at(policy.name)));
        }
      }
    }
  }

  // Hermeneutical gaps are a property of the references, not of any
  // system, so they come once per group.
  for (const std::string& group : present_groups) {
    const PolicyId& community = config.policy(config.community_policy_for(group));
    std::vector<const Transcript*> dominant_refs;
    std::vector<const Transcript*> community_refs;
    for (const Utterance& utt : corpus.utterances) {
      if (utt.group != group) {
        continue;
      }
      const ReferenceSet& refs = corpus.references.at(utt.utterance_id);
      dominant_refs.push_back(&refs.at(enforced.name));
      community_refs.push_back(&refs.at(community.name));
    }
    report.gap_table.push_back(
        hermeneutical_gap(group, enforced, community, dominant_refs, community_refs));
  }

  if (options.dump_alignments) {
    for (const TaskResult& slot : results) {
      output.alignment_dump += slot.dump;
    }
  }
  return output;
}

EvaluationReport evaluate(const Corpus& corpus,
                          const std::map<std::string, std::map<std::string, Hypothesis>>& systems,
                          const RunConfig& config, const EvaluateOptions& options) {
  return evaluate_with_dump(corpus, systems, config, options).report;
}

}  // namespace convwer
