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

#ifndef CONVWER_EVALUATE_HPP_
#define CONVWER_EVALUATE_HPP_

#include <map>
#include <string>
#include <vector>

#include "convwer/config.hpp"
#include "convwer/report.hpp"
#include "convwer/types.hpp"

namespace convwer {

struct EvaluateOptions {
  unsigned workers = 0;      // 0 = hardware concurrency
  std::string timestamp;     // stamped into run_metadata when non-empty
  bool dump_alignments = false;
};

// Scores every (system, utterance, policy) triple and aggregates into a
// report. Alignment fans out across worker threads; results are written
// by index, so aggregation order (and therefore every downstream byte)
// is independent of the worker count.
//
// Validates completeness both ways: each system must cover every corpus
// utterance, and every hypothesis must name a corpus utterance.
EvaluationReport evaluate(const Corpus& corpus,
                          const std::map<std::string, std::map<std::string, Hypothesis>>& systems,
                          const RunConfig& config, const EvaluateOptions& options = {});

// When options.dump_alignments is set, evaluate_with_dump also returns
// the per-op dump: one tab-separated line per edit op prefixed by
// system_id, utterance_id, policy.
struct EvaluateOutput {
  EvaluationReport report;
  std::string alignment_dump;
};

EvaluateOutput evaluate_with_dump(
    const Corpus& corpus,
    const std::map<std::string, std::map<std::string, Hypothesis>>& systems,
    const RunConfig& config, const EvaluateOptions& options = {});

}  // namespace convwer

#endif  // CONVWER_EVALUATE_HPP_
