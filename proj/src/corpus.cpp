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

#include "convwer/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "convwer/errors.hpp"

namespace convwer {

namespace {

using nlohmann::json;

json parse_jsonl_line(const std::string& path, std::size_t line_no, const std::string& line) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ":" + std::to_string(line_no) + ": invalid JSON: " + e.what());
  }
  if (!record.is_object()) {
    throw ValidationError(path + ":" + std::to_string(line_no) + ": record is not a JSON object");
  }
  return record;
}

std::string require_string(const json& record, const char* key, const std::string& where) {
  auto it = record.find(key);
  if (it == record.end()) {
    throw ValidationError(where + ": missing field '" + std::string(key) + "'");
  }
  if (!it->is_string()) {
    throw ValidationError(where + ": field '" + std::string(key) + "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

Corpus load_manifest(const std::string& path, const std::vector<PolicyId>& policy_set,
                     const GroupVocabulary& vocabulary, const NormalizationScheme& scheme,
                     const std::set<std::string>& filler_lexicon) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open manifest '" + path + "'");
  }
  Corpus corpus;
  corpus.policy_set = policy_set;
  corpus.group_vocabulary = vocabulary;

  static const std::set<std::string> kKnownFields = {"utterance_id", "speaker_id", "group",
                                                     "audio_duration_s", "references"};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const std::string where = path + ":" + std::to_string(line_no);
    json record = parse_jsonl_line(path, line_no, line);
    for (const auto& [key, value] : record.items()) {
      if (kKnownFields.count(key) == 0) {
        throw ValidationError(where + ": unknown field '" + key + "'");
      }
    }
    Utterance utt;
    utt.utterance_id = require_string(record, "utterance_id", where);
    utt.speaker_id = require_string(record, "speaker_id", where);
    utt.group = require_string(record, "group", where);
    if (record.contains("audio_duration_s")) {
      const json& dur = record["audio_duration_s"];
      if (!dur.is_number()) {
        throw ValidationError(where + ": field 'audio_duration_s' must be a number");
      }
      double value = dur.get<double>();
      if (value < 0) {
        throw ValidationError(where + ": utterance '" + utt.utterance_id +
                              "' has negative audio_duration_s");
      }
      utt.audio_duration_s = value;
    }
    if (vocabulary.count(utt.group) == 0) {
      throw ValidationError(where + ": utterance '" + utt.utterance_id + "' has unknown group '" +
                            utt.group + "'");
    }
    if (corpus.references.count(utt.utterance_id) > 0) {
      throw ValidationError(where + ": duplicate utterance_id '" + utt.utterance_id + "'");
    }
    auto refs_it = record.find("references");
    if (refs_it == record.end() || !refs_it->is_object()) {
      throw ValidationError(where + ": utterance '" + utt.utterance_id +
                            "' is missing the 'references' object");
    }
    ReferenceSet refs;
    for (const PolicyId& policy : policy_set) {
      auto ref_it = refs_it->find(policy.name);
      if (ref_it == refs_it->end()) {
        throw ValidationError(where + ": utterance '" + utt.utterance_id +
                              "' is missing the reference for policy '" + policy.name + "'");
      }
      if (!ref_it->is_string()) {
        throw ValidationError(where + ": utterance '" + utt.utterance_id + "' reference '" +
                              policy.name + "' must be a string");
      }
      Transcript transcript;
      transcript.tokens = tokenize(ref_it->get<std::string>(), scheme, filler_lexicon);
      transcript.policy = policy;
      if (transcript.tokens.empty()) {
        throw ValidationError(where + ": utterance '" + utt.utterance_id +
                              "' has a zero-length reference for policy '" + policy.name + "'");
      }
      refs.emplace(policy.name, std::move(transcript));
    }
    // References for policies outside the configured set are legal and
    // ignored; a manifest may serve several configurations.
    corpus.references.emplace(utt.utterance_id, std::move(refs));
    corpus.utterances.push_back(std::move(utt));
  }
  std::sort(corpus.utterances.begin(), corpus.utterances.end(),
            [](const Utterance& a, const Utterance& b) { return a.utterance_id < b.utterance_id; });
  return corpus;
}

std::map<std::string, std::map<std::string, Hypothesis>> load_hypotheses(
    const std::string& path, const NormalizationScheme& scheme,
    const std::set<std::string>& filler_lexicon) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open hypotheses '" + path + "'");
  }
  std::map<std::string, std::map<std::string, Hypothesis>> systems;
  static const std::set<std::string> kKnownFields = {"system_id", "utterance_id", "text"};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const std::string where = path + ":" + std::to_string(line_no);
    json record = parse_jsonl_line(path, line_no, line);
    for (const auto& [key, value] : record.items()) {
      if (kKnownFields.count(key) == 0) {
        throw ValidationError(where + ": unknown field '" + key + "'");
      }
    }
    Hypothesis hyp;
    hyp.system_id = require_string(record, "system_id", where);
    hyp.utterance_id = require_string(record, "utterance_id", where);
    std::string text = require_string(record, "text", where);
    hyp.transcript.tokens = tokenize(text, scheme, filler_lexicon);
    hyp.transcript.policy.reset();
    auto& by_utt = systems[hyp.system_id];
    if (by_utt.count(hyp.utterance_id) > 0) {
      throw ValidationError(where + ": duplicate hypothesis for system '" + hyp.system_id +
                            "', utterance '" + hyp.utterance_id + "'");
    }
    by_utt.emplace(hyp.utterance_id, std::move(hyp));
  }
  return systems;
}

Corpus partition_by_group(const Corpus& corpus, const std::string& group) {
  if (corpus.group_vocabulary.count(group) == 0) {
    throw ValidationError("partition_by_group: unknown group '" + group + "'");
  }
  Corpus out;
  out.policy_set = corpus.policy_set;
  out.group_vocabulary = corpus.group_vocabulary;
  for (const Utterance& utt : corpus.utterances) {
    if (utt.group == group) {
      out.utterances.push_back(utt);
      out.references.emplace(utt.utterance_id, corpus.references.at(utt.utterance_id));
    }
  }
  return out;
}

std::string serialize_tokens(const std::vector<Token>& tokens,
                             const std::set<std::string>& filler_lexicon) {
  std::string out;
  for (const Token& t : tokens) {
    if (!out.empty()) {
      out += ' ';
    }
    switch (t.klass) {
      case TokenKlass::kFragment:
        out += "&+" + t.surface;
        break;
      case TokenKlass::kFiller:
        if (filler_lexicon.count(t.surface) > 0) {
          out += t.surface;
        } else {
          out += "&-" + t.surface;
        }
        break;
      case TokenKlass::kWord:
      case TokenKlass::kHedgeMarker:
        out += t.surface;
        break;
    }
  }
  return out;
}

}  // namespace convwer
