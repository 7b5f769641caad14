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

#ifndef CONVWER_REPORT_HPP_
#define CONVWER_REPORT_HPP_

#include <map>
#include <string>
#include <vector>

#include "convwer/metrics.hpp"
#include "convwer/types.hpp"

namespace convwer {

struct RunMetadata {
  std::string toolkit_version;
  std::string config_digest;
  // ISO-8601 UTC when the caller supplies one (SOURCE_DATE_EPOCH or
  // --timestamp); empty otherwise. Wall clock is never read: identical
  // inputs must serialize to identical bytes.
  std::string timestamp;
};

// Everything one evaluation run produced. Serialization is a pure
// function of this struct; emitting twice gives byte-identical output.
struct EvaluationReport {
  RunMetadata run_metadata;
  std::vector<PolicyId> policy_set;
  PolicyId enforced_policy;
  EidMode eid_mode = EidMode::kAggregate;
  GroupVocabulary group_vocabulary;

  std::vector<GroupPolicyWer> wer_matrix;   // per (system, group|"", policy)
  std::vector<EidResult> eid_table;         // per (system, group|"")
  std::vector<DeltaEidResult> delta_eid_table;
  std::vector<RangeResult> range_table;     // system-level and per-group
  std::vector<GapResult> gap_table;         // per group
  std::vector<FairnessGap> fairness_gaps;   // json/markdown only
};

enum class ReportFormat { kCsv, kJson, kMarkdown };

ReportFormat report_format_from_name(const std::string& name);  // csv|json|md

// Renders one format. CSV returns the six table files keyed by filename
// (wer_matrix.csv, eid.csv, delta_eid.csv, range.csv, gap.csv,
// eid_decomposition.csv), each led by a "# ..." metadata line and the
// fixed column header. JSON returns {"report.json": ...}, markdown
// {"report.md": ...}. Every serialized WER value sits next to its policy
// label; "WER" never appears without a convention qualifier.
std::map<std::string, std::string> emit(const EvaluationReport& report, ReportFormat format);

// The stacked view behind the EID tables: per (system, group|"") rows of
// best-case WER, EID penalty, and enforced WER, where best + penalty ==
// enforced exactly. Only defined for aggregate mode; per-utterance
// reports throw ValidationError.
struct EidDecompositionRow {
  std::string system_id;
  std::string group;
  PolicyId best_policy;
  PolicyId enforced_policy;
  Rational best_case_wer;
  Rational eid_penalty;
  Rational enforced_wer;
};

std::vector<EidDecompositionRow> eid_decomposition(const EvaluationReport& report);

// CSV text of the decomposition table (also part of emit(kCsv)).
std::string emit_eid_decomposition(const EvaluationReport& report);

}  // namespace convwer

#endif  // CONVWER_REPORT_HPP_
