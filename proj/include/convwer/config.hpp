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

#ifndef CONVWER_CONFIG_HPP_
#define CONVWER_CONFIG_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "convwer/metrics.hpp"
#include "convwer/textnorm.hpp"
#include "convwer/types.hpp"

namespace convwer {

// A full evaluation configuration. The JSON schema is documented in
// README.md; configs/default.json spells out every default. Unknown keys
// anywhere in the file are hard errors, value typos never pass silently.
struct RunConfig {
  std::vector<PolicyId> policy_set;               // ordered, unique names
  std::string enforced_policy = "nonverbatim";    // must be in policy_set
  EidMode eid_mode = EidMode::kAggregate;
  // group -> community policy name. Groups not listed fall back to the
  // default rule: names containing "aphasia" use verbatim, anything else
  // uses the enforced policy.
  std::map<std::string, std::string> community_policy_map;
  NormalizationScheme normalization;
  std::set<std::string> filler_lexicon = default_filler_lexicon();
  std::map<std::string, ConventionRuleSet> convention_rules;  // by policy name
  GroupVocabulary group_vocabulary = {"control", "fluent_aphasia", "nonfluent_aphasia"};
  std::set<std::string> tier_filter = {"PAR"};    // CHAT main tiers kept
  // chat-import: raw @ID group field -> vocabulary group.
  std::map<std::string, std::string> chat_group_map;
  std::string chat_default_group;                 // used when no @ID mapping

  // Hex SHA-256 of the config source (or of the canonical defaults when
  // no file was given). Stamped into every report.
  std::string config_digest;

  const PolicyId& policy(const std::string& name) const;
  const ConventionRuleSet& rules(const std::string& policy_name) const;
  std::string community_policy_for(const std::string& group) const;
};

// The builtin configuration: verbatim/nonverbatim/legal policies,
// default lexica, aggregate EID, nonverbatim enforced.
RunConfig default_config();

// Reads and validates a JSON config file. Missing keys inherit defaults;
// unknown keys throw ValidationError naming the key path.
RunConfig load_config(const std::string& path);

// load_config for in-memory text (tests, bindings).
RunConfig parse_config(const std::string& json_text, const std::string& origin = "<config>");

// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace convwer

#endif  // CONVWER_CONFIG_HPP_
