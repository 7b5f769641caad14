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

#include "convwer/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "convwer/chat.hpp"
#include "convwer/config.hpp"
#include "convwer/corpus.hpp"
#include "convwer/errors.hpp"
#include "convwer/evaluate.hpp"
#include "convwer/report.hpp"
#include "convwer/textnorm.hpp"

namespace convwer {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

// Uniform error-to-exit-code mapping for all subcommands.
int guarded(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

RunConfig config_for(const std::string& config_path) {
  return config_path.empty() ? default_config() : load_config(config_path);
}

// The effective timestamp: an explicit flag wins, then SOURCE_DATE_EPOCH
// (seconds, rendered as ISO-8601 UTC), else empty. The wall clock is
// never consulted, so reruns are byte-identical.
std::string resolve_timestamp(const std::string& flag_value) {
  if (!flag_value.empty()) {
    return flag_value;
  }
  const char* epoch_text = std::getenv("SOURCE_DATE_EPOCH");
  if (epoch_text == nullptr || *epoch_text == '\0') {
    return "";
  }
  errno = 0;
  char* end = nullptr;
  long long epoch = std::strtoll(epoch_text, &end, 10);
  if (errno != 0 || end == epoch_text || *end != '\0' || epoch < 0) {
    throw ValidationError("SOURCE_DATE_EPOCH must be a non-negative integer, got '" +
                          std::string(epoch_text) + "'");
  }
  std::time_t t = static_cast<std::time_t>(epoch);
  std::tm utc{};
  if (gmtime_r(&t, &utc) == nullptr) {
    throw ValidationError("SOURCE_DATE_EPOCH value is out of range: '" + std::string(epoch_text) +
                          "'");
  }
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write '" + path.string() + "'");
  }
  out << content;
  if (!out) {
    throw IoError("write failed for '" + path.string() + "'");
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Strict manifest record check shared by derive. Field set and types
// mirror load_manifest, but the group vocabulary is deliberately not
// enforced: derivation only rewrites references.
void check_manifest_record(const ordered_json& record, const std::string& where) {
  if (!record.is_object()) {
    throw ValidationError(where + ": manifest record must be a JSON object");
  }
  static const std::set<std::string> kKnown = {"utterance_id", "speaker_id", "group",
                                               "audio_duration_s", "references"};
  for (const auto& [key, value] : record.items()) {
    if (kKnown.count(key) == 0) {
      throw ValidationError(where + ": unknown manifest field '" + key + "'");
    }
  }
  for (const char* key : {"utterance_id", "speaker_id", "group"}) {
    if (!record.contains(key) || !record[key].is_string() ||
        record[key].get<std::string>().empty()) {
      throw ValidationError(where + ": field '" + std::string(key) +
                            "' must be a non-empty string");
    }
  }
  if (record.contains("audio_duration_s")) {
    if (!record["audio_duration_s"].is_number() || record["audio_duration_s"].get<double>() < 0) {
      throw ValidationError(where + ": audio_duration_s must be a non-negative number");
    }
  }
  if (!record.contains("references") || !record["references"].is_object()) {
    throw ValidationError(where + ": field 'references' must be an object");
  }
  for (const auto& [policy, text] : record["references"].items()) {
    if (!text.is_string()) {
      throw ValidationError(where + ": reference '" + policy + "' must be a string");
    }
  }
}

const PolicyId* find_verbatim_policy(const RunConfig& config) {
  for (const PolicyId& policy : config.policy_set) {
    if (policy.kind == PolicyKind::kVerbatim) {
      return &policy;
    }
  }
  return nullptr;
}

}  // namespace

int run_evaluate(const EvaluateArgs& args) {
  return guarded([&args] {
    RunConfig config = config_for(args.config_path);

    std::vector<std::string> format_names = args.formats;
    if (format_names.empty()) {
      format_names.push_back("csv");
    }
    std::vector<ReportFormat> formats;
    for (const std::string& name : format_names) {
      ReportFormat format = report_format_from_name(name);
      bool seen = false;
      for (ReportFormat f : formats) {
        seen = seen || f == format;
      }
      if (!seen) {
        formats.push_back(format);
      }
    }

    Corpus corpus = load_manifest(args.manifest_path, config.policy_set, config.group_vocabulary,
                                  config.normalization, config.filler_lexicon);
    auto systems = load_hypotheses(args.hypotheses_path, config.normalization,
                                   config.filler_lexicon);

    EvaluateOptions options;
    options.workers = args.workers;
    options.timestamp = resolve_timestamp(args.timestamp);
    options.dump_alignments = args.dump_alignments;
    EvaluateOutput output = evaluate_with_dump(corpus, systems, config, options);

    std::map<std::string, std::string> files;
    for (ReportFormat format : formats) {
      for (auto& [name, content] : emit(output.report, format)) {
        files[name] = std::move(content);
      }
      if (format == ReportFormat::kCsv && config.eid_mode == EidMode::kPerUtterance) {
        std::cerr << "note: eid_decomposition.csv is not emitted in per_utterance mode; "
                     "the best-case/enforced split is only defined for aggregate EID\n";
      }
    }
    if (args.dump_alignments) {
      files["alignments.tsv"] = std::move(output.alignment_dump);
    }

    fs::path out_dir(args.out_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
      throw IoError("cannot create output directory '" + out_dir.string() + "': " + ec.message());
    }
    if (!args.overwrite) {
      for (const auto& [name, content] : files) {
        if (fs::exists(out_dir / name)) {
          throw IoError("refusing to overwrite '" + (out_dir / name).string() +
                        "' (pass --overwrite to replace existing reports)");
        }
      }
    }
    for (const auto& [name, content] : files) {
      write_file(out_dir / name, content);
    }
  });
}

int run_derive(const DeriveArgs& args) {
  return guarded([&args] {
    RunConfig config = config_for(args.config_path);
    const PolicyId& target = config.policy(args.policy);
    const ConventionRuleSet& rules = config.rules(target.name);
    const PolicyId* source = find_verbatim_policy(config);
    if (source == nullptr) {
      throw ValidationError(
          "convention derivation needs a verbatim-kind policy in the configured set to read "
          "from, and none is configured");
    }

    std::ifstream in(args.manifest_path, std::ios::binary);
    if (!in) {
      throw IoError("cannot open manifest '" + args.manifest_path + "'");
    }
    std::vector<std::string> out_lines;
    std::set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::string where = args.manifest_path + ":" + std::to_string(line_no);
      if (line.empty()) {
        continue;
      }
      ordered_json record;
      try {
        record = ordered_json::parse(line);
      } catch (const ordered_json::parse_error& e) {
        throw ValidationError(where + ": invalid JSON: " + e.what());
      }
      check_manifest_record(record, where);
      std::string utterance_id = record["utterance_id"].get<std::string>();
      if (!seen_ids.insert(utterance_id).second) {
        throw ValidationError(where + ": duplicate utterance_id '" + utterance_id + "'");
      }
      ordered_json& references = record["references"];
      if (!references.contains(source->name)) {
        throw ValidationError(where + ": utterance '" + utterance_id +
                              "' has no reference for the verbatim policy '" + source->name + "'");
      }
      if (references.contains(target.name) && !args.overwrite) {
        throw ValidationError(where + ": utterance '" + utterance_id +
                              "' already has a reference for policy '" + target.name +
                              "' (pass --overwrite to replace it)");
      }

      Transcript verbatim;
      verbatim.tokens = tokenize(references[source->name].get<std::string>(),
                                 config.normalization, config.filler_lexicon);
      verbatim.policy = *source;
      Transcript derived = derive_convention(verbatim, rules, config.normalization);
      if (derived.tokens.empty()) {
        throw ValidationError(where + ": utterance '" + utterance_id + "' derives to zero '" +
                              target.name + "' tokens (the verbatim reference is all "
                              "disfluencies); drop the utterance or keep it out of this policy");
      }
      references[target.name] = serialize_tokens(derived.tokens, config.filler_lexicon);
      out_lines.push_back(record.dump());
    }
    in.close();
    if (out_lines.empty()) {
      throw ValidationError("manifest '" + args.manifest_path + "' has no records");
    }

    // Default is an in-place rewrite; the manifest is fully read by now.
    fs::path out_path = args.out_path.empty() ? fs::path(args.manifest_path)
                                              : fs::path(args.out_path);
    bool in_place = fs::path(args.manifest_path) == out_path;
    if (!in_place && fs::exists(out_path) && !args.overwrite) {
      throw IoError("refusing to overwrite '" + out_path.string() +
                    "' (pass --overwrite to replace it)");
    }
    std::string payload;
    for (const std::string& out_line : out_lines) {
      payload += out_line;
      payload += '\n';
    }
    write_file(out_path, payload);
  });
}

int run_chat_import(const ChatImportArgs& args) {
  return guarded([&args] {
    RunConfig config = config_for(args.config_path);
    const PolicyId* verbatim = find_verbatim_policy(config);
    if (verbatim == nullptr) {
      throw ValidationError(
          "chat-import writes verbatim references and needs a verbatim-kind policy in the "
          "configured set, and none is configured");
    }

    fs::path dir(args.chat_dir);
    if (!fs::is_directory(dir)) {
      throw IoError("'" + dir.string() + "' is not a directory");
    }
    std::vector<fs::path> chat_files;
    for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".cha") {
        chat_files.push_back(entry.path());
      }
    }
    std::sort(chat_files.begin(), chat_files.end());
    if (chat_files.empty()) {
      throw ValidationError("no .cha files found in '" + dir.string() + "'");
    }

    std::vector<std::pair<std::string, std::string>> records;  // (utterance_id, line)
    std::vector<std::string> unresolved;  // files whose group cannot be mapped
    for (const fs::path& file : chat_files) {
      std::string raw = read_file(file);
      std::string stem = file.stem().string();

      ChatParseResult parsed;
      ChatHeaderInfo headers;
      try {
        headers = parse_chat_headers(raw);
        parsed = parse_chat(raw, config.tier_filter, config.normalization, *verbatim);
      } catch (const ValidationError& e) {
        throw ValidationError(file.filename().string() + ": " + e.what());
      }
      if (parsed.transcript.tokens.empty()) {
        std::cerr << "warning: " << file.filename().string() << ": "
                  << (parsed.empty_warning ? "no tier matched the tier filter"
                                           : "kept tiers normalized to zero tokens")
                  << "; skipping\n";
        continue;
      }

      std::string raw_group;
      for (const std::string& code : config.tier_filter) {
        auto it = headers.group_by_code.find(code);
        if (it != headers.group_by_code.end() && !it->second.empty()) {
          raw_group = it->second;
          break;
        }
      }
      std::string group;
      auto mapped = config.chat_group_map.find(raw_group);
      if (mapped != config.chat_group_map.end()) {
        group = mapped->second;
      } else if (config.group_vocabulary.count(raw_group) != 0) {
        group = raw_group;
      } else if (!config.chat_default_group.empty()) {
        group = config.chat_default_group;
      } else {
        unresolved.push_back(file.filename().string() + " (group field '" + raw_group + "')");
        continue;
      }

      ordered_json record;
      record["utterance_id"] = stem;
      record["speaker_id"] = stem;
      record["group"] = group;
      record["references"] = ordered_json::object();
      record["references"][verbatim->name] =
          serialize_tokens(parsed.transcript.tokens, config.filler_lexicon);
      records.emplace_back(stem, record.dump());
    }
    if (!unresolved.empty()) {
      std::string message =
          "cannot resolve a group for these files (extend chat_import.group_map or set "
          "chat_import.default_group):";
      for (const std::string& entry : unresolved) {
        message += "\n  " + entry;
      }
      throw ValidationError(message);
    }
    if (records.empty()) {
      throw ValidationError("no usable transcripts in '" + dir.string() + "'");
    }
    std::sort(records.begin(), records.end());

    fs::path out_path(args.out_path);
    if (fs::exists(out_path) && !args.overwrite) {
      throw IoError("refusing to overwrite '" + out_path.string() +
                    "' (pass --overwrite to replace it)");
    }
    std::string payload;
    for (const auto& [utterance_id, record_line] : records) {
      payload += record_line;
      payload += '\n';
    }
    write_file(out_path, payload);
  });
}

}  // namespace convwer
