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

#ifndef CONVWER_CLI_HPP_
#define CONVWER_CLI_HPP_

#include <string>
#include <vector>

namespace convwer {

// Exit codes shared by all subcommands: 0 success, 1 validation error,
// 2 I/O error. The run_* functions are the CLI bodies; main() only
// parses flags. Tests drive them directly.

struct EvaluateArgs {
  std::string manifest_path;
  std::string hypotheses_path;
  std::string config_path;   // empty = builtin defaults
  std::string out_dir;
  unsigned workers = 0;      // 0 = hardware concurrency
  std::vector<std::string> formats;  // subset of csv|json|md; empty = csv
  bool overwrite = false;
  bool dump_alignments = false;
  std::string timestamp;     // overrides SOURCE_DATE_EPOCH when set
};

int run_evaluate(const EvaluateArgs& args);

struct DeriveArgs {
  std::string manifest_path;
  std::string policy;        // target policy name
  std::string config_path;
  std::string out_path;
  bool overwrite = false;    // allow replacing an existing reference
};

int run_derive(const DeriveArgs& args);

struct ChatImportArgs {
  std::string chat_dir;
  std::string config_path;
  std::string out_path;
  bool overwrite = false;    // allow replacing an existing output file
};

int run_chat_import(const ChatImportArgs& args);

}  // namespace convwer

#endif  // CONVWER_CLI_HPP_
