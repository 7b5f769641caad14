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

#ifndef CONVWER_CORPUS_HPP_
#define CONVWER_CORPUS_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "convwer/textnorm.hpp"
#include "convwer/types.hpp"

namespace convwer {

// Loads a JSONL manifest. One record per line:
//   {"utterance_id": ..., "speaker_id": ..., "group": ...,
//    "audio_duration_s": <optional>, "references": {policy: text, ...}}
//
// Hard errors, each naming the offending utterance: missing or duplicate
// utterance_id, a group outside the vocabulary, a missing reference for
// any configured policy, a reference that normalizes to zero tokens, a
// negative duration, an unknown record field. References for policies
// outside the configured set are allowed and ignored, so one manifest can
// serve several configurations.
Corpus load_manifest(const std::string& path, const std::vector<PolicyId>& policy_set,
                     const GroupVocabulary& vocabulary,
                     const NormalizationScheme& scheme = NormalizationScheme{},
                     const std::set<std::string>& filler_lexicon = default_filler_lexicon());

// Loads JSONL hypotheses: {"system_id": ..., "utterance_id": ..., "text": ...}.
// Duplicate (system_id, utterance_id) pairs and unknown fields are hard
// errors. Empty text is legal and yields an empty transcript.
// Returns system_id -> utterance_id -> Hypothesis, both levels sorted.
std::map<std::string, std::map<std::string, Hypothesis>> load_hypotheses(
    const std::string& path, const NormalizationScheme& scheme = NormalizationScheme{},
    const std::set<std::string>& filler_lexicon = default_filler_lexicon());

// Restricts a corpus to one group. Throws ValidationError when the group
// is not in the vocabulary.
Corpus partition_by_group(const Corpus& corpus, const std::string& group);

// Serializes a token sequence back to manifest text such that tokenize()
// reproduces surfaces and klasses: fragments as "&+x", fillers as bare
// surface when the lexicon covers them and "&-x" otherwise.
std::string serialize_tokens(const std::vector<Token>& tokens,
                             const std::set<std::string>& filler_lexicon = default_filler_lexicon());

}  // namespace convwer

#endif  // CONVWER_CORPUS_HPP_
