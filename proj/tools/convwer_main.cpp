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

#include <CLI11.hpp>

#include "convwer/cli.hpp"
#include "convwer/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"convwer: convention-aware word error rate evaluation"};
  app.set_version_flag("--version", std::string("convwer ") + convwer::kVersion);
  app.require_subcommand(1);

  convwer::EvaluateArgs evaluate_args;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Score hypotheses against every configured convention and write reports");
  evaluate->add_option("--manifest", evaluate_args.manifest_path,
                       "JSONL utterance manifest with per-convention references")
      ->required();
  evaluate->add_option("--hypotheses", evaluate_args.hypotheses_path,
                       "JSONL hypotheses (system_id, utterance_id, text)")
      ->required();
  evaluate->add_option("--out", evaluate_args.out_dir, "Output directory for report files")
      ->required();
  evaluate->add_option("--config", evaluate_args.config_path,
                       "JSON run configuration (defaults to the builtin configuration)");
  evaluate->add_option("--workers", evaluate_args.workers,
                       "Worker threads for alignment (0 = hardware concurrency)");
  evaluate->add_option("--format", evaluate_args.formats,
                       "Report format: csv, json, or md (repeatable; default csv)");
  evaluate->add_flag("--overwrite", evaluate_args.overwrite,
                     "Replace existing report files in the output directory");
  evaluate->add_flag("--dump-alignments", evaluate_args.dump_alignments,
                     "Also write per-operation alignments to alignments.tsv");
  evaluate->add_option("--timestamp", evaluate_args.timestamp,
                       "Timestamp string stamped into report metadata (overrides "
                       "SOURCE_DATE_EPOCH; reports carry no timestamp when neither is set)");

  convwer::DeriveArgs derive_args;
  CLI::App* derive = app.add_subcommand(
      "derive", "Derive a convention's reference from each verbatim reference in a manifest");
  derive->add_option("--manifest", derive_args.manifest_path, "JSONL utterance manifest")
      ->required();
  derive->add_option("--policy", derive_args.policy, "Target convention (policy name)")
      ->required();
  derive->add_option("--config", derive_args.config_path,
                     "JSON run configuration (defaults to the builtin configuration)");
  derive->add_option("--out", derive_args.out_path,
                     "Output manifest path (default: rewrite the input manifest in place)");
  derive->add_flag("--overwrite", derive_args.overwrite,
                   "Replace existing references for the target convention");

  convwer::ChatImportArgs chat_args;
  CLI::App* chat_import = app.add_subcommand(
      "chat-import", "Build a manifest with verbatim references from a directory of .cha files");
  chat_import->add_option("--chat-dir", chat_args.chat_dir, "Directory containing .cha files")
      ->required();
  chat_import->add_option("--out", chat_args.out_path, "Output manifest path")->required();
  chat_import->add_option("--config", chat_args.config_path,
                          "JSON run configuration (defaults to the builtin configuration)");
  chat_import->add_flag("--overwrite", chat_args.overwrite,
                        "Replace an existing output manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (evaluate->parsed()) {
    return convwer::run_evaluate(evaluate_args);
  }
  if (derive->parsed()) {
    return convwer::run_derive(derive_args);
  }
  return convwer::run_chat_import(chat_args);
}
