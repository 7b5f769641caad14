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

#ifndef CONVWER_TYPES_HPP_
#define CONVWER_TYPES_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace convwer {

// A transcription convention. Several conventions can legitimately
// transcribe the same audio differently; every score in this toolkit is
// computed and reported relative to one of them.
enum class PolicyKind {
  kVerbatim,     // every audible token, disfluencies included
  kNonVerbatim,  // fillers/fragments/repetitions cleaned away
  kLegal,        // fragments and stray fillers removed, hedges kept intact
  kCustom,       // user-defined rule set
};

struct PolicyId {
  std::string name;     // machine name, unique within a run ("nonverbatim")
  PolicyKind kind = PolicyKind::kCustom;
  std::string display;  // human label for markdown ("non-verbatim")

  bool operator==(const PolicyId& other) const { return name == other.name; }
  bool operator!=(const PolicyId& other) const { return name != other.name; }
};

const char* policy_kind_name(PolicyKind kind);
PolicyKind policy_kind_from_name(const std::string& name);

// Default display label: the builtin non-verbatim policy is convention-
// ally written with a hyphen; everything else displays its machine name.
std::string default_policy_display(const std::string& name, PolicyKind kind);

enum class TokenKlass {
  kWord,
  kFiller,       // filled pause (um, uh, ...)
  kFragment,     // cut-off word ("go--", CHAT &+go)
  kHedgeMarker,  // token preserved as part of a hedge phrase
};

const char* token_klass_name(TokenKlass klass);

struct Token {
  std::string surface;  // normalized surface form
  TokenKlass klass = TokenKlass::kWord;
  // Byte range [begin, end) of the originating raw token, when known.
  std::optional<std::pair<std::size_t, std::size_t>> source_span;

  Token() = default;
  Token(std::string s, TokenKlass k) : surface(std::move(s)), klass(k) {}
};

// A normalized token sequence. `policy` names the convention the text
// follows; hypothesis transcripts (ASR output) carry no policy.
struct Transcript {
  std::vector<Token> tokens;
  std::optional<PolicyId> policy;

  std::size_t size() const { return tokens.size(); }
  std::vector<std::string> surfaces() const;
};

// One reference transcript per configured policy, keyed by policy name.
using ReferenceSet = std::map<std::string, Transcript>;

struct Utterance {
  std::string utterance_id;
  std::string speaker_id;
  std::string group;
  std::optional<double> audio_duration_s;  // >= 0 when present
};

struct Hypothesis {
  std::string system_id;
  std::string utterance_id;
  Transcript transcript;  // may be empty; empties score, they do not crash
};

using GroupVocabulary = std::set<std::string>;

// An evaluation corpus: utterances sorted by utterance_id, references
// complete for every configured policy, every group in the vocabulary.
struct Corpus {
  std::vector<Utterance> utterances;            // sorted by utterance_id
  std::map<std::string, ReferenceSet> references;  // utterance_id -> refs
  std::vector<PolicyId> policy_set;             // configured order
  GroupVocabulary group_vocabulary;
};

}  // namespace convwer

#endif  // CONVWER_TYPES_HPP_
