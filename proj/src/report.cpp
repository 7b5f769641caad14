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

#include "convwer/report.hpp"

#include <sstream>

#include <json.hpp>

#include "convwer/errors.hpp"
#include "convwer/rational.hpp"
#include "convwer/version.hpp"

namespace convwer {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) {
    return value;
  }
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') {
      quoted += '"';
    }
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) {
      row += ',';
    }
    row += csv_field(fields[i]);
  }
  row += '\n';
  return row;
}

// Leading comment carried by every CSV table: version, config digest,
// enforced policy, EID mode, timestamp.
std::string csv_meta_line(const EvaluationReport& report) {
  std::string line = "# convwer ";
  line += report.run_metadata.toolkit_version;
  line += " config_digest=" + report.run_metadata.config_digest;
  line += " enforced_policy=" + report.enforced_policy.name;
  line += " eid_mode=";
  line += eid_mode_name(report.eid_mode);
  line += " timestamp=" + report.run_metadata.timestamp;
  line += '\n';
  return line;
}

std::string emit_wer_matrix_csv(const EvaluationReport& report) {
  std::string out = csv_meta_line(report);
  out += "system_id,group,policy,n_utterances,wer_pct,ins_pct,del_pct,sub_pct\n";
  for (const GroupPolicyWer& row : report.wer_matrix) {
    out += csv_row({row.system_id, row.group, row.policy.name, std::to_string(row.n_utterances),
                    format_pct(row.mean_wer), format_pct(row.mean_ins), format_pct(row.mean_del),
                    format_pct(row.mean_sub)});
  }
  return out;
}

std::string emit_eid_csv(const EvaluationReport& report) {
  std::string out = csv_meta_line(report);
  out += "system_id,group,enforced_policy,best_policy,mode,eid_pp\n";
  for (const EidResult& row : report.eid_table) {
    out += csv_row({row.system_id, row.group, row.enforced_policy.name, row.best_policy.name,
                    eid_mode_name(row.mode), format_pct(row.eid)});
  }
  return out;
}

std::string emit_delta_eid_csv(const EvaluationReport& report) {
  std::string out = csv_meta_line(report);
  out += "system_id,group_a,group_b,enforced_policy,mode,delta_eid_pp\n";
  for (const DeltaEidResult& row : report.delta_eid_table) {
    out += csv_row({row.system_id, row.group_a, row.group_b, row.enforced_policy.name,
                    eid_mode_name(row.mode), format_pct(row.delta)});
  }
  return out;
}

std::string emit_range_csv(const EvaluationReport& report) {
  std::string out = csv_meta_line(report);
  out += "system_id,group,policy,wer_pct,range_min_pct,range_max_pct,width_pp\n";
  for (const RangeResult& row : report.range_table) {
    for (const auto& [policy, wer] : row.wer_set) {
      out += csv_row({row.system_id, row.group, policy.name, format_pct(wer),
                      format_pct(row.range_min), format_pct(row.range_max),
                      format_pct(row.width)});
    }
  }
  return out;
}

std::string emit_gap_csv(const EvaluationReport& report) {
  std::string out = csv_meta_line(report);
  out += "group,dominant_policy,community_policy,gap_pct\n";
  for (const GapResult& row : report.gap_table) {
    out += csv_row({row.group, row.dominant_policy.name, row.community_policy.name,
                    format_pct(row.gap)});
  }
  return out;
}

// ----- JSON -----

ordered_json policy_json(const PolicyId& policy) {
  return ordered_json{{"name", policy.name},
                      {"kind", policy_kind_name(policy.kind)},
                      {"display", policy.display}};
}

ordered_json emit_json(const EvaluationReport& report) {
  ordered_json root;
  root["run_metadata"] = ordered_json{
      {"toolkit", "convwer"},
      {"version", report.run_metadata.toolkit_version},
      {"config_digest", report.run_metadata.config_digest},
      {"timestamp", report.run_metadata.timestamp},
      {"enforced_policy", report.enforced_policy.name},
      {"eid_mode", eid_mode_name(report.eid_mode)},
  };
  root["policies"] = ordered_json::array();
  for (const PolicyId& policy : report.policy_set) {
    root["policies"].push_back(policy_json(policy));
  }
  root["groups"] = ordered_json::array();
  for (const std::string& group : report.group_vocabulary) {
    root["groups"].push_back(group);
  }

  root["wer_matrix"] = ordered_json::array();
  for (const GroupPolicyWer& row : report.wer_matrix) {
    root["wer_matrix"].push_back(ordered_json{
        {"system_id", row.system_id},
        {"group", row.group},
        {"policy", row.policy.name},
        {"n_utterances", row.n_utterances},
        {"wer_pct", format_pct(row.mean_wer)},
        {"ins_pct", format_pct(row.mean_ins)},
        {"del_pct", format_pct(row.mean_del)},
        {"sub_pct", format_pct(row.mean_sub)},
    });
  }

  root["eid"] = ordered_json::array();
  for (const EidResult& row : report.eid_table) {
    root["eid"].push_back(ordered_json{
        {"system_id", row.system_id},
        {"group", row.group},
        {"enforced_policy", row.enforced_policy.name},
        {"best_policy", row.best_policy.name},
        {"mode", eid_mode_name(row.mode)},
        {"eid_pp", format_pct(row.eid)},
    });
  }

  root["delta_eid"] = ordered_json::array();
  for (const DeltaEidResult& row : report.delta_eid_table) {
    root["delta_eid"].push_back(ordered_json{
        {"system_id", row.system_id},
        {"group_a", row.group_a},
        {"group_b", row.group_b},
        {"enforced_policy", row.enforced_policy.name},
        {"mode", eid_mode_name(row.mode)},
        {"delta_eid_pp", format_pct(row.delta)},
    });
  }

  root["wer_range"] = ordered_json::array();
  for (const RangeResult& row : report.range_table) {
    ordered_json wer_set = ordered_json::array();
    for (const auto& [policy, wer] : row.wer_set) {
      wer_set.push_back(ordered_json{{"policy", policy.name}, {"wer_pct", format_pct(wer)}});
    }
    root["wer_range"].push_back(ordered_json{
        {"system_id", row.system_id},
        {"group", row.group},
        {"wer_set", std::move(wer_set)},
        {"range_min_pct", format_pct(row.range_min)},
        {"range_max_pct", format_pct(row.range_max)},
        {"width_pp", format_pct(row.width)},
    });
  }

  root["hermeneutical_gap"] = ordered_json::array();
  for (const GapResult& row : report.gap_table) {
    root["hermeneutical_gap"].push_back(ordered_json{
        {"group", row.group},
        {"dominant_policy", row.dominant_policy.name},
        {"community_policy", row.community_policy.name},
        {"gap_pct", format_pct(row.gap)},
    });
  }

  root["fairness_gaps"] = ordered_json::array();
  for (const FairnessGap& row : report.fairness_gaps) {
    root["fairness_gaps"].push_back(ordered_json{
        {"system_id", row.system_id},
        {"policy", row.policy.name},
        {"group_a", row.group_a},
        {"group_b", row.group_b},
        {"gap_pp", format_pct(row.gap)},
    });
  }

  if (report.eid_mode == EidMode::kAggregate) {
    root["eid_decomposition"] = ordered_json::array();
    for (const EidDecompositionRow& row : eid_decomposition(report)) {
      root["eid_decomposition"].push_back(ordered_json{
          {"system_id", row.system_id},
          {"group", row.group},
          {"best_policy", row.best_policy.name},
          {"best_case_wer_pct", format_pct(row.best_case_wer)},
          {"eid_pp", format_pct(row.eid_penalty)},
          {"enforced_policy", row.enforced_policy.name},
          {"enforced_wer_pct", format_pct(row.enforced_wer)},
      });
    }
  }
  return root;
}

// ----- Markdown -----

std::string md_group(const std::string& group) { return group.empty() ? "(all)" : group; }

// A markdown WER value is never printed bare: each cell carries the
// convention it was scored against.
std::string md_wer_cell(const Rational& wer, const PolicyId& policy) {
  return format_pct(wer) + " (" + policy.display + ")";
}

struct MatrixKey {
  std::string system_id;
  std::string group;

  bool operator==(const MatrixKey& other) const {
    return system_id == other.system_id && group == other.group;
  }
};

std::string emit_markdown(const EvaluationReport& report) {
  std::ostringstream out;
  out << "# convwer report\n\n";
  out << "- toolkit: convwer " << report.run_metadata.toolkit_version << "\n";
  out << "- config digest: `" << report.run_metadata.config_digest << "`\n";
  out << "- timestamp: "
      << (report.run_metadata.timestamp.empty() ? "(not set)" : report.run_metadata.timestamp)
      << "\n";
  out << "- enforced convention: " << report.enforced_policy.display << " (`"
      << report.enforced_policy.name << "`)\n";
  out << "- EID mode: " << eid_mode_name(report.eid_mode) << "\n";

  // Cell lookup for the pivoted convention-column tables, plus row key
  // order as the rows first appear in the matrix.
  auto cell_of = [&report](const std::string& system, const std::string& group,
                           const std::string& policy_name) -> const GroupPolicyWer* {
    for (const GroupPolicyWer& row : report.wer_matrix) {
      if (row.system_id == system && row.group == group && row.policy.name == policy_name) {
        return &row;
      }
    }
    return nullptr;
  };
  std::vector<MatrixKey> row_keys;
  for (const GroupPolicyWer& row : report.wer_matrix) {
    MatrixKey key{row.system_id, row.group};
    bool seen = false;
    for (const MatrixKey& k : row_keys) {
      if (k == key) {
        seen = true;
        break;
      }
    }
    if (!seen) {
      row_keys.push_back(std::move(key));
    }
  }

  auto pivot_table = [&](bool system_level) {
    out << "| System |";
    if (!system_level) {
      out << " Group |";
    }
    out << " N |";
    for (const PolicyId& policy : report.policy_set) {
      out << " " << policy.display << " |";
    }
    out << "\n|";
    int columns = static_cast<int>(report.policy_set.size()) + (system_level ? 2 : 3);
    for (int i = 0; i < columns; ++i) {
      out << " --- |";
    }
    out << "\n";
    for (const MatrixKey& key : row_keys) {
      if (key.group.empty() != system_level) {
        continue;
      }
      out << "| " << key.system_id << " |";
      if (!system_level) {
        out << " " << key.group << " |";
      }
      const GroupPolicyWer* first = nullptr;
      std::string cells;
      for (const PolicyId& policy : report.policy_set) {
        const GroupPolicyWer* cell = cell_of(key.system_id, key.group, policy.name);
        if (cell != nullptr && first == nullptr) {
          first = cell;
        }
        cells += cell != nullptr ? " " + md_wer_cell(cell->mean_wer, policy) + " |" : "  |";
      }
      out << " " << (first != nullptr ? std::to_string(first->n_utterances) : "0") << " |" << cells
          << "\n";
    }
    out << "\n";
  };

  out << "\n## WER (%) by system and convention\n\n";
  out << "Utterance-averaged WER per convention, whole corpus. Every value names the convention"
         " it was scored against.\n\n";
  pivot_table(/*system_level=*/true);

  out << "## WER (%) by group and convention\n\n";
  pivot_table(/*system_level=*/false);

  out << "## Edit operation rates by convention (% of reference words)\n\n";
  out << "| System | Group | Convention | WER (%) | Insertions (%) | Deletions (%) |"
         " Substitutions (%) |\n";
  out << "| --- | --- | --- | --- | --- | --- | --- |\n";
  for (const GroupPolicyWer& row : report.wer_matrix) {
    out << "| " << row.system_id << " | " << md_group(row.group) << " | " << row.policy.display
        << " | " << md_wer_cell(row.mean_wer, row.policy) << " | " << format_pct(row.mean_ins)
        << " | " << format_pct(row.mean_del) << " | " << format_pct(row.mean_sub) << " |\n";
  }
  out << "\n";

  out << "## Enforcement-induced deficit (EID, pp), enforced convention: "
      << report.enforced_policy.display << "\n\n";
  out << "How much WER a slice pays under the enforced convention relative to its best-case"
         " convention (mode: " << eid_mode_name(report.eid_mode) << ").\n\n";
  out << "| System | Group | Best convention | EID (pp) |\n";
  out << "| --- | --- | --- | --- |\n";
  for (const EidResult& row : report.eid_table) {
    out << "| " << row.system_id << " | " << md_group(row.group) << " | "
        << row.best_policy.display << " | " << format_pct(row.eid) << " |\n";
  }
  out << "\n";

  if (!report.delta_eid_table.empty()) {
    out << "## EID disparity between groups (pp)\n\n";
    out << "| System | Group A | Group B | ΔEID (pp) |\n";
    out << "| --- | --- | --- | --- |\n";
    for (const DeltaEidResult& row : report.delta_eid_table) {
      out << "| " << row.system_id << " | " << row.group_a << " | " << row.group_b << " | "
          << format_pct(row.delta) << " |\n";
    }
    out << "\n";
  }

  if (report.eid_mode == EidMode::kAggregate) {
    out << "## EID decomposition: Best-case WER + EID = Enforced WER\n\n";
    out << "| System | Group | Best-case WER (%) | EID (pp) | Enforced WER (%) |\n";
    out << "| --- | --- | --- | --- | --- |\n";
    for (const EidDecompositionRow& row : eid_decomposition(report)) {
      out << "| " << row.system_id << " | " << md_group(row.group) << " | "
          << md_wer_cell(row.best_case_wer, row.best_policy) << " | "
          << format_pct(row.eid_penalty) << " | "
          << md_wer_cell(row.enforced_wer, row.enforced_policy) << " |\n";
    }
    out << "\n";
  }

  out << "## WER-Range across conventions\n\n";
  out << "Spread of mean WER over the convention set; the bracket names which convention sits"
         " at each end.\n\n";
  out << "| System | Group | Range [min, max] (%) | Width (pp) |\n";
  out << "| --- | --- | --- | --- |\n";
  for (const RangeResult& row : report.range_table) {
    const PolicyId* min_policy = nullptr;
    const PolicyId* max_policy = nullptr;
    for (const auto& [policy, wer] : row.wer_set) {
      if (min_policy == nullptr && wer == row.range_min) {
        min_policy = &policy;
      }
      if (max_policy == nullptr && wer == row.range_max) {
        max_policy = &policy;
      }
    }
    out << "| " << row.system_id << " | " << md_group(row.group) << " | [";
    out << (min_policy != nullptr ? md_wer_cell(row.range_min, *min_policy)
                                  : format_pct(row.range_min));
    out << ", ";
    out << (max_policy != nullptr ? md_wer_cell(row.range_max, *max_policy)
                                  : format_pct(row.range_max));
    out << "] | " << format_pct(row.width) << " |\n";
  }
  out << "\n";

  if (!report.gap_table.empty()) {
    out << "## Hermeneutical gap by group\n\n";
    out << "Utterance-averaged WER between each group's community convention reference and the"
           " dominant convention reference (the dominant side is the denominator).\n\n";
    out << "| Group | Dominant convention | Community convention | Gap (%) |\n";
    out << "| --- | --- | --- | --- |\n";
    for (const GapResult& row : report.gap_table) {
      out << "| " << row.group << " | " << row.dominant_policy.display << " | "
          << row.community_policy.display << " | " << format_pct(row.gap) << " |\n";
    }
    out << "\n";
  }

  if (!report.fairness_gaps.empty()) {
    out << "## Fairness gaps by convention (pp)\n\n";
    out << "Difference in mean WER between two groups under the same convention.\n\n";
    out << "| System | Convention | Group A | Group B | Gap (pp) |\n";
    out << "| --- | --- | --- | --- | --- |\n";
    for (const FairnessGap& row : report.fairness_gaps) {
      out << "| " << row.system_id << " | " << row.policy.display << " | " << row.group_a << " | "
          << row.group_b << " | " << format_pct(row.gap) << " |\n";
    }
    out << "\n";
  }

  std::string text = out.str();
  while (text.size() > 1 && text[text.size() - 1] == '\n' && text[text.size() - 2] == '\n') {
    text.pop_back();
  }
  return text;
}

}  // namespace

ReportFormat report_format_from_name(const std::string& name) {
  if (name == "csv") {
    return ReportFormat::kCsv;
  }
  if (name == "json") {
    return ReportFormat::kJson;
  }
  if (name == "md" || name == "markdown") {
    return ReportFormat::kMarkdown;
  }
  throw ValidationError("unknown report format '" + name + "' (expected csv, json, or md)");
}

std::vector<EidDecompositionRow> eid_decomposition(const EvaluationReport& report) {
  if (report.eid_mode != EidMode::kAggregate) {
    throw ValidationError(
        "EID decomposition is only defined in aggregate mode; per-utterance EID does not split "
        "into best-case plus penalty at the slice level");
  }
  std::vector<EidDecompositionRow> rows;
  for (const EidResult& entry : report.eid_table) {
    EidDecompositionRow row;
    row.system_id = entry.system_id;
    row.group = entry.group;
    row.best_policy = entry.best_policy;
    row.enforced_policy = entry.enforced_policy;
    row.eid_penalty = entry.eid;

    const RangeResult* range = nullptr;
    for (const RangeResult& candidate : report.range_table) {
      if (candidate.system_id == entry.system_id && candidate.group == entry.group) {
        range = &candidate;
        break;
      }
    }
    if (range == nullptr) {
      throw ValidationError("report has an EID row without a matching range row (system '" +
                            entry.system_id + "', group '" + entry.group + "')");
    }
    bool found_best = false;
    bool found_enforced = false;
    for (const auto& [policy, wer] : range->wer_set) {
      if (policy.name == entry.best_policy.name) {
        row.best_case_wer = wer;
        found_best = true;
      }
      if (policy.name == entry.enforced_policy.name) {
        row.enforced_wer = wer;
        found_enforced = true;
      }
    }
    if (!found_best || !found_enforced) {
      throw ValidationError("range row for system '" + entry.system_id + "', group '" +
                            entry.group + "' does not cover the EID policies");
    }
    if (row.best_case_wer + row.eid_penalty != row.enforced_wer) {
      throw ValidationError("inconsistent report: best-case WER + EID != enforced WER for "
                            "system '" + entry.system_id + "', group '" + entry.group + "'");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string emit_eid_decomposition(const EvaluationReport& report) {
  std::string out = csv_meta_line(report);
  out += "system_id,group,best_policy,best_case_wer_pct,eid_pp,enforced_policy,"
         "enforced_wer_pct\n";
  for (const EidDecompositionRow& row : eid_decomposition(report)) {
    out += csv_row({row.system_id, row.group, row.best_policy.name,
                    format_pct(row.best_case_wer), format_pct(row.eid_penalty),
                    row.enforced_policy.name, format_pct(row.enforced_wer)});
  }
  return out;
}

std::map<std::string, std::string> emit(const EvaluationReport& report, ReportFormat format) {
  std::map<std::string, std::string> files;
  switch (format) {
    case ReportFormat::kCsv:
      files["wer_matrix.csv"] = emit_wer_matrix_csv(report);
      files["eid.csv"] = emit_eid_csv(report);
      files["delta_eid.csv"] = emit_delta_eid_csv(report);
      files["range.csv"] = emit_range_csv(report);
      files["gap.csv"] = emit_gap_csv(report);
      if (report.eid_mode == EidMode::kAggregate) {
        files["eid_decomposition.csv"] = emit_eid_decomposition(report);
      }
      break;
    case ReportFormat::kJson:
      files["report.json"] = emit_json(report).dump(2) + "\n";
      break;
    case ReportFormat::kMarkdown:
      files["report.md"] = emit_markdown(report);
      break;
  }
  return files;
}

}  // namespace convwer
