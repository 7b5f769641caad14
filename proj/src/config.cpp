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

#include "convwer/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "convwer/errors.hpp"

namespace convwer {

namespace {

using nlohmann::json;

// The builtin configuration, also shipped as configs/default.json. Every
// recognized key appears here with its default value.
const char* const kDefaultConfigJson = R"({
  "policies": [
    {"name": "verbatim", "kind": "verbatim"},
    {"name": "nonverbatim", "kind": "nonverbatim", "display": "non-verbatim"},
    {"name": "legal", "kind": "legal"}
  ],
  "enforced_policy": "nonverbatim",
  "eid_mode": "aggregate",
  "groups": ["control", "fluent_aphasia", "nonfluent_aphasia"],
  "community_policies": {
    "control": "nonverbatim",
    "fluent_aphasia": "verbatim",
    "nonfluent_aphasia": "verbatim"
  },
  "normalization": {
    "lowercase": true,
    "strip_punctuation": true,
    "collapse_whitespace": true,
    "number_style": "as_written"
  },
  "filler_lexicon": ["um", "uh", "er", "ah", "mm", "hm", "mhm"],
  "conventions": {
    "verbatim": {
      "remove_fillers": false,
      "collapse_immediate_repetitions": false,
      "remove_fragments": false,
      "preserve_hedges": false
    },
    "nonverbatim": {
      "remove_fillers": true,
      "collapse_immediate_repetitions": true,
      "remove_fragments": true,
      "preserve_hedges": false
    },
    "legal": {
      "remove_fillers": true,
      "collapse_immediate_repetitions": false,
      "remove_fragments": true,
      "preserve_hedges": true,
      "hedge_lexicon": ["i think", "i believe", "i guess", "maybe", "sort of", "kind of"]
    }
  },
  "tier_filter": ["PAR"],
  "chat_import": {
    "group_map": {},
    "default_group": ""
  }
}
)";

void reject_unknown_keys(const json& object, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (known.count(key) == 0) {
      throw ValidationError(where + ": unknown key '" + key + "'");
    }
  }
}

bool get_bool(const json& object, const char* key, bool fallback, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) {
    return fallback;
  }
  if (!it->is_boolean()) {
    throw ValidationError(where + ": key '" + std::string(key) + "' must be a boolean");
  }
  return it->get<bool>();
}

std::string get_string(const json& object, const char* key, const std::string& fallback,
                       const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) {
    return fallback;
  }
  if (!it->is_string()) {
    throw ValidationError(where + ": key '" + std::string(key) + "' must be a string");
  }
  return it->get<std::string>();
}

std::vector<std::string> get_string_array(const json& value, const std::string& where) {
  if (!value.is_array()) {
    throw ValidationError(where + ": expected an array of strings");
  }
  std::vector<std::string> out;
  for (const json& item : value) {
    if (!item.is_string()) {
      throw ValidationError(where + ": expected an array of strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

const PolicyId& RunConfig::policy(const std::string& name) const {
  for (const PolicyId& p : policy_set) {
    if (p.name == name) {
      return p;
    }
  }
  throw ValidationError("policy '" + name + "' is not in the configured policy set");
}

const ConventionRuleSet& RunConfig::rules(const std::string& policy_name) const {
  auto it = convention_rules.find(policy_name);
  if (it == convention_rules.end()) {
    throw ValidationError("no convention rules for policy '" + policy_name + "'");
  }
  return it->second;
}

std::string RunConfig::community_policy_for(const std::string& group) const {
  auto it = community_policy_map.find(group);
  if (it != community_policy_map.end()) {
    return it->second;
  }
  // Fallback rule: aphasia groups keep their community's verbatim
  // convention; everything else follows the enforced one.
  if (group.find("aphasia") != std::string::npos) {
    for (const PolicyId& p : policy_set) {
      if (p.kind == PolicyKind::kVerbatim) {
        return p.name;
      }
    }
  }
  return enforced_policy;
}

RunConfig parse_config(const std::string& json_text, const std::string& origin) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(origin + ": invalid JSON: " + e.what());
  }
  if (!root.is_object()) {
    throw ValidationError(origin + ": config root must be an object");
  }
  static const std::set<std::string> kTopKeys = {
      "policies",     "enforced_policy", "eid_mode",    "groups",      "community_policies",
      "normalization", "filler_lexicon",  "conventions", "tier_filter", "chat_import"};
  reject_unknown_keys(root, kTopKeys, origin);

  RunConfig config;

  // Policies, in configured order.
  config.policy_set.clear();
  if (root.contains("policies")) {
    if (!root["policies"].is_array() || root["policies"].empty()) {
      throw ValidationError(origin + ": 'policies' must be a non-empty array");
    }
    for (const json& entry : root["policies"]) {
      if (!entry.is_object()) {
        throw ValidationError(origin + ": each policy must be an object");
      }
      reject_unknown_keys(entry, {"name", "kind", "display"}, origin + ".policies");
      PolicyId policy;
      policy.name = get_string(entry, "name", "", origin + ".policies");
      if (policy.name.empty()) {
        throw ValidationError(origin + ": every policy needs a non-empty 'name'");
      }
      policy.kind = policy_kind_from_name(get_string(entry, "kind", "custom", origin + ".policies"));
      policy.display = get_string(entry, "display", "", origin + ".policies");
      if (policy.display.empty()) {
        policy.display = default_policy_display(policy.name, policy.kind);
      }
      for (const PolicyId& existing : config.policy_set) {
        if (existing.name == policy.name) {
          throw ValidationError(origin + ": duplicate policy name '" + policy.name + "'");
        }
      }
      config.policy_set.push_back(std::move(policy));
    }
  } else {
    config.policy_set = {
        {"verbatim", PolicyKind::kVerbatim, "verbatim"},
        {"nonverbatim", PolicyKind::kNonVerbatim, "non-verbatim"},
        {"legal", PolicyKind::kLegal, "legal"},
    };
  }

  config.enforced_policy = get_string(root, "enforced_policy", "nonverbatim", origin);
  config.policy(config.enforced_policy);  // must exist

  std::string mode = get_string(root, "eid_mode", "aggregate", origin);
  if (mode == "aggregate") {
    config.eid_mode = EidMode::kAggregate;
  } else if (mode == "per_utterance") {
    config.eid_mode = EidMode::kPerUtterance;
  } else {
    throw ValidationError(origin + ": eid_mode must be 'aggregate' or 'per_utterance', got '" +
                          mode + "'");
  }

  if (root.contains("groups")) {
    config.group_vocabulary.clear();
    for (const std::string& g : get_string_array(root["groups"], origin + ".groups")) {
      if (!config.group_vocabulary.insert(g).second) {
        throw ValidationError(origin + ": duplicate group '" + g + "'");
      }
    }
    if (config.group_vocabulary.empty()) {
      throw ValidationError(origin + ": 'groups' must not be empty");
    }
  }

  if (root.contains("normalization")) {
    const json& norm = root["normalization"];
    if (!norm.is_object()) {
      throw ValidationError(origin + ": 'normalization' must be an object");
    }
    reject_unknown_keys(
        norm, {"lowercase", "strip_punctuation", "collapse_whitespace", "number_style"},
        origin + ".normalization");
    config.normalization.lowercase =
        get_bool(norm, "lowercase", true, origin + ".normalization");
    config.normalization.strip_punctuation =
        get_bool(norm, "strip_punctuation", true, origin + ".normalization");
    config.normalization.collapse_whitespace =
        get_bool(norm, "collapse_whitespace", true, origin + ".normalization");
    std::string style = get_string(norm, "number_style", "as_written", origin + ".normalization");
    if (style == "as_written") {
      config.normalization.number_style = NormalizationScheme::NumberStyle::kAsWritten;
    } else if (style == "none") {
      config.normalization.number_style = NormalizationScheme::NumberStyle::kNone;
    } else {
      throw ValidationError(origin + ": number_style must be 'as_written' or 'none', got '" +
                            style + "'");
    }
  }

  if (root.contains("filler_lexicon")) {
    config.filler_lexicon.clear();
    for (std::string entry :
         get_string_array(root["filler_lexicon"], origin + ".filler_lexicon")) {
      config.filler_lexicon.insert(normalize_text(entry, config.normalization));
    }
  }

  // Convention rules: kind defaults first, then per-policy overrides.
  config.convention_rules.clear();
  for (const PolicyId& policy : config.policy_set) {
    ConventionRuleSet rules = default_rules(policy);
    rules.filler_lexicon = config.filler_lexicon;
    config.convention_rules.emplace(policy.name, std::move(rules));
  }
  if (root.contains("conventions")) {
    const json& conv = root["conventions"];
    if (!conv.is_object()) {
      throw ValidationError(origin + ": 'conventions' must be an object");
    }
    for (const auto& [policy_name, entry] : conv.items()) {
      auto it = config.convention_rules.find(policy_name);
      if (it == config.convention_rules.end()) {
        throw ValidationError(origin + ": conventions entry for unknown policy '" + policy_name +
                              "'");
      }
      if (!entry.is_object()) {
        throw ValidationError(origin + ": conventions entry for '" + policy_name +
                              "' must be an object");
      }
      const std::string where = origin + ".conventions." + policy_name;
      reject_unknown_keys(entry,
                          {"remove_fillers", "collapse_immediate_repetitions", "remove_fragments",
                           "preserve_hedges", "filler_lexicon", "hedge_lexicon"},
                          where);
      ConventionRuleSet& rules = it->second;
      rules.remove_fillers = get_bool(entry, "remove_fillers", rules.remove_fillers, where);
      rules.collapse_immediate_repetitions = get_bool(
          entry, "collapse_immediate_repetitions", rules.collapse_immediate_repetitions, where);
      rules.remove_fragments = get_bool(entry, "remove_fragments", rules.remove_fragments, where);
      rules.preserve_hedges = get_bool(entry, "preserve_hedges", rules.preserve_hedges, where);
      if (entry.contains("filler_lexicon")) {
        rules.filler_lexicon.clear();
        for (std::string item : get_string_array(entry["filler_lexicon"], where)) {
          rules.filler_lexicon.insert(normalize_text(item, config.normalization));
        }
      }
      if (entry.contains("hedge_lexicon")) {
        rules.hedge_lexicon = get_string_array(entry["hedge_lexicon"], where);
      }
    }
  }
  for (const auto& [name, rules] : config.convention_rules) {
    check_rules(rules);
  }

  if (root.contains("community_policies")) {
    const json& cp = root["community_policies"];
    if (!cp.is_object()) {
      throw ValidationError(origin + ": 'community_policies' must be an object");
    }
    for (const auto& [group, value] : cp.items()) {
      if (config.group_vocabulary.count(group) == 0) {
        throw ValidationError(origin + ": community_policies names unknown group '" + group + "'");
      }
      if (!value.is_string()) {
        throw ValidationError(origin + ": community_policies['" + group + "'] must be a string");
      }
      std::string policy_name = value.get<std::string>();
      config.policy(policy_name);  // must exist
      config.community_policy_map[group] = policy_name;
    }
  }

  if (root.contains("tier_filter")) {
    config.tier_filter.clear();
    for (const std::string& code : get_string_array(root["tier_filter"], origin + ".tier_filter")) {
      config.tier_filter.insert(code);
    }
    if (config.tier_filter.empty()) {
      throw ValidationError(origin + ": 'tier_filter' must not be empty");
    }
  }

  if (root.contains("chat_import")) {
    const json& ci = root["chat_import"];
    if (!ci.is_object()) {
      throw ValidationError(origin + ": 'chat_import' must be an object");
    }
    reject_unknown_keys(ci, {"group_map", "default_group"}, origin + ".chat_import");
    if (ci.contains("group_map")) {
      if (!ci["group_map"].is_object()) {
        throw ValidationError(origin + ": chat_import.group_map must be an object");
      }
      for (const auto& [raw, value] : ci["group_map"].items()) {
        if (!value.is_string()) {
          throw ValidationError(origin + ": chat_import.group_map['" + raw +
                                "'] must be a string");
        }
        std::string target = value.get<std::string>();
        if (config.group_vocabulary.count(target) == 0) {
          throw ValidationError(origin + ": chat_import.group_map['" + raw +
                                "'] names unknown group '" + target + "'");
        }
        config.chat_group_map[raw] = target;
      }
    }
    config.chat_default_group = get_string(ci, "default_group", "", origin + ".chat_import");
    if (!config.chat_default_group.empty() &&
        config.group_vocabulary.count(config.chat_default_group) == 0) {
      throw ValidationError(origin + ": chat_import.default_group '" + config.chat_default_group +
                            "' is not in the group vocabulary");
    }
  }

  config.config_digest = sha256_hex(json_text);
  return config;
}

RunConfig default_config() { return parse_config(kDefaultConfigJson, "<defaults>"); }

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path);
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256_hex: EVP_Digest failed");
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace convwer
