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
//
// Python bindings. Text goes in as plain strings, scores come out as
// floats next to the exact two-decimal strings the reports print, and
// the heavy batch operations are the same CLI bodies the command line
// runs.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "convwer/align.hpp"
#include "convwer/chat.hpp"
#include "convwer/cli.hpp"
#include "convwer/config.hpp"
#include "convwer/corpus.hpp"
#include "convwer/errors.hpp"
#include "convwer/metrics.hpp"
#include "convwer/rational.hpp"
#include "convwer/textnorm.hpp"
#include "convwer/types.hpp"
#include "convwer/version.hpp"

namespace py = pybind11;

namespace {

using convwer::PolicyId;
using convwer::Rational;
using convwer::RunConfig;
using convwer::Token;
using convwer::Transcript;

const RunConfig& defaults() {
  static const RunConfig config = convwer::default_config();
  return config;
}

// Scores can arrive as exact decimal strings ("9.81"), ints, floats
// (converted at their exact binary value), or (numerator, denominator)
// pairs.
Rational to_rational(const py::handle& value) {
  if (py::isinstance<py::str>(value)) {
    return convwer::rational_from_decimal(value.cast<std::string>());
  }
  if (py::isinstance<py::bool_>(value)) {
    throw py::type_error("expected a number, not a bool");
  }
  if (py::isinstance<py::int_>(value)) {
    return Rational(value.cast<long long>());
  }
  if (py::isinstance<py::float_>(value)) {
    return Rational(value.cast<double>());
  }
  if (py::isinstance<py::tuple>(value) && py::len(value) == 2) {
    auto pair = value.cast<std::pair<long long, long long>>();
    return Rational(pair.first, pair.second);
  }
  throw py::type_error(
      "expected a decimal string, int, float, or (numerator, denominator) tuple");
}

std::vector<Token> tokens_of(const std::string& text) {
  return convwer::tokenize(text, defaults().normalization, defaults().filler_lexicon);
}

Transcript transcript_of(const std::string& text, const std::optional<PolicyId>& policy) {
  Transcript transcript;
  transcript.tokens = tokens_of(text);
  transcript.policy = policy;
  return transcript;
}

convwer::EidMode mode_from_name(const std::string& name) {
  if (name == "aggregate") {
    return convwer::EidMode::kAggregate;
  }
  if (name == "per_utterance") {
    return convwer::EidMode::kPerUtterance;
  }
  throw convwer::ValidationError("unknown EID mode '" + name +
                                 "' (expected aggregate or per_utterance)");
}

// Columns keep the dict's insertion order; policy names outside the
// builtin set are treated as custom conventions.
convwer::PerPolicyScores scores_from_dict(const py::dict& scores) {
  convwer::PerPolicyScores columns;
  for (const auto& item : scores) {
    const auto name = item.first.cast<std::string>();
    std::vector<Rational> column;
    for (const py::handle& value : item.second.cast<py::iterable>()) {
      column.push_back(to_rational(value));
    }
    columns.emplace_back(PolicyId{name, convwer::PolicyKind::kCustom, name}, std::move(column));
  }
  return columns;
}

py::dict eid_to_dict(const convwer::EidResult& result) {
  py::dict out;
  out["system_id"] = result.system_id;
  out["group"] = result.group;
  out["enforced_policy"] = result.enforced_policy.name;
  out["best_policy"] = result.best_policy.name;
  out["mode"] = convwer::eid_mode_name(result.mode);
  out["eid"] = convwer::rational_to_double(result.eid);
  out["eid_pp"] = convwer::format_pct(result.eid);
  return out;
}

py::dict align_py(const std::string& hypothesis, const std::string& reference) {
  const std::vector<Token> hyp = tokens_of(hypothesis);
  const std::vector<Token> ref = tokens_of(reference);
  const convwer::Alignment alignment = convwer::align(hyp, ref);
  const convwer::OperationRates rates = convwer::operation_rates(alignment);

  py::list ops;
  for (const convwer::EditOp& op : alignment.ops) {
    py::dict entry;
    entry["kind"] = convwer::edit_kind_name(op.kind);
    entry["hyp_index"] = op.hyp_index ? py::cast(*op.hyp_index) : py::none();
    entry["ref_index"] = op.ref_index ? py::cast(*op.ref_index) : py::none();
    ops.append(entry);
  }

  py::dict out;
  out["substitutions"] = alignment.substitutions;
  out["deletions"] = alignment.deletions;
  out["insertions"] = alignment.insertions;
  out["matches"] = alignment.matches;
  out["ref_len"] = alignment.ref_len;
  out["hyp_len"] = alignment.hyp_len;
  const Rational wer_value = convwer::wer(alignment);
  out["wer"] = convwer::rational_to_double(wer_value);
  out["wer_pct"] = convwer::format_pct(wer_value);
  out["insertion_pct"] = convwer::format_pct(rates.insertion_rate);
  out["deletion_pct"] = convwer::format_pct(rates.deletion_rate);
  out["substitution_pct"] = convwer::format_pct(rates.substitution_rate);
  out["ops"] = ops;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Convention-aware WER evaluation core";
  m.attr("__version__") = convwer::kVersion;

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) {
        std::rethrow_exception(p);
      }
    } catch (const convwer::IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    } catch (const convwer::ValidationError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("policies", []() {
    std::vector<std::string> names;
    for (const PolicyId& policy : defaults().policy_set) {
      names.push_back(policy.name);
    }
    return names;
  },
        "Configured convention names, enforced-policy order preserved.");

  m.def("tokenize", [](const std::string& text) {
    py::list out;
    for (const Token& token : tokens_of(text)) {
      out.append(py::make_tuple(token.surface, convwer::token_klass_name(token.klass)));
    }
    return out;
  },
        py::arg("text"),
        "Normalize text into (surface, klass) pairs; klass is word, filler, fragment, or "
        "hedge_marker.");

  m.def("align", &align_py, py::arg("hypothesis"), py::arg("reference"),
        "Align a hypothesis into a reference: edit counts, exact WER as percent string, per-op "
        "rates, and the operation list.");

  m.def("wer", [](const std::string& hypothesis, const std::string& reference) {
    return convwer::rational_to_double(
        convwer::wer(convwer::align(tokens_of(hypothesis), tokens_of(reference))));
  },
        py::arg("hypothesis"), py::arg("reference"),
        "WER of a hypothesis against one reference, as a float.");

  m.def("derive", [](const std::string& verbatim_text, const std::string& policy) {
    const RunConfig& config = defaults();
    Transcript verbatim = transcript_of(verbatim_text, config.policy("verbatim"));
    Transcript derived =
        convwer::derive_convention(verbatim, config.rules(policy), config.normalization);
    return convwer::serialize_tokens(derived.tokens, config.filler_lexicon);
  },
        py::arg("verbatim_text"), py::arg("policy") = "nonverbatim",
        "Rewrite a verbatim transcript into another configured convention.");

  m.def("validate", [](const std::string& text, const std::string& policy) {
    const RunConfig& config = defaults();
    Transcript transcript = transcript_of(text, std::nullopt);
    py::list out;
    for (const convwer::ConventionViolation& violation :
         convwer::validate_convention(transcript, config.rules(policy), config.normalization)) {
      out.append(py::make_tuple(violation.token_index, violation.reason));
    }
    return out;
  },
        py::arg("text"), py::arg("policy"),
        "List (token_index, reason) pairs the convention would remove; empty means conforming.");

  m.def("eid", [](const py::dict& scores, const std::string& enforced, const std::string& mode,
                  const std::string& system_id, const std::string& group) {
    return eid_to_dict(convwer::eid(system_id, group, scores_from_dict(scores),
                                    PolicyId{enforced, convwer::PolicyKind::kCustom, enforced},
                                    mode_from_name(mode)));
  },
        py::arg("scores"), py::arg("enforced"), py::arg("mode") = "aggregate",
        py::arg("system_id") = "", py::arg("group") = "",
        "Enforcement-induced deficit over {policy: [wer, ...]} columns. Values may be decimal "
        "strings, ints, floats, or (num, den) tuples.");

  m.def("delta_eid", [](const py::dict& scores_a, const py::dict& scores_b,
                        const std::string& enforced, const std::string& mode,
                        const std::string& group_a, const std::string& group_b) {
    const PolicyId enforced_policy{enforced, convwer::PolicyKind::kCustom, enforced};
    const convwer::EidMode eid_mode = mode_from_name(mode);
    convwer::EidResult a =
        convwer::eid("", group_a, scores_from_dict(scores_a), enforced_policy, eid_mode);
    convwer::EidResult b =
        convwer::eid("", group_b, scores_from_dict(scores_b), enforced_policy, eid_mode);
    convwer::DeltaEidResult delta = convwer::delta_eid(a, b);
    py::dict out;
    out["group_a"] = delta.group_a;
    out["group_b"] = delta.group_b;
    out["enforced_policy"] = delta.enforced_policy.name;
    out["mode"] = convwer::eid_mode_name(delta.mode);
    out["delta"] = convwer::rational_to_double(delta.delta);
    out["delta_pp"] = convwer::format_pct(delta.delta);
    out["eid_a"] = eid_to_dict(a);
    out["eid_b"] = eid_to_dict(b);
    return out;
  },
        py::arg("scores_a"), py::arg("scores_b"), py::arg("enforced"),
        py::arg("mode") = "aggregate", py::arg("group_a") = "a", py::arg("group_b") = "b",
        "EID difference between two slices under the same enforced policy and mode.");

  m.def("wer_range", [](const py::dict& mean_wer_by_policy) {
    std::vector<std::pair<PolicyId, Rational>> means;
    for (const auto& item : mean_wer_by_policy) {
      const auto name = item.first.cast<std::string>();
      means.emplace_back(PolicyId{name, convwer::PolicyKind::kCustom, name},
                         to_rational(item.second));
    }
    convwer::RangeResult range = convwer::wer_range("", "", means);
    py::list wer_set;
    for (const auto& [policy, value] : range.wer_set) {
      wer_set.append(py::make_tuple(policy.name, convwer::format_pct(value)));
    }
    py::dict out;
    out["wer_set"] = wer_set;
    out["min"] = convwer::rational_to_double(range.range_min);
    out["max"] = convwer::rational_to_double(range.range_max);
    out["width"] = convwer::rational_to_double(range.width);
    out["min_pct"] = convwer::format_pct(range.range_min);
    out["max_pct"] = convwer::format_pct(range.range_max);
    out["width_pp"] = convwer::format_pct(range.width);
    return out;
  },
        py::arg("mean_wer_by_policy"),
        "Spread of mean WER across conventions: labeled set, min, max, and width.");

  m.def("inter_reference_distance",
        [](const std::string& ref_a, const std::string& ref_b,
           const std::optional<std::string>& anchor) {
          Transcript a = transcript_of(ref_a, std::nullopt);
          Transcript b = transcript_of(ref_b, std::nullopt);
          std::optional<Transcript> anchor_transcript;
          if (anchor.has_value()) {
            anchor_transcript = transcript_of(*anchor, std::nullopt);
          }
          convwer::InterReferenceDistance distance = convwer::inter_reference_distance(
              a, b, anchor_transcript ? &*anchor_transcript : nullptr);
          py::dict out;
          out["direct"] = convwer::rational_to_double(distance.direct);
          out["direct_pct"] = convwer::format_pct(distance.direct);
          out["anchored"] = distance.anchored
                                ? py::cast(convwer::rational_to_double(*distance.anchored))
                                : py::none();
          out["anchored_pct"] =
              distance.anchored ? py::cast(convwer::format_pct(*distance.anchored)) : py::none();
          return out;
        },
        py::arg("ref_a"), py::arg("ref_b"), py::arg("anchor") = py::none(),
        "WER between two references of the same utterance (ref_b is the denominator), "
        "optionally re-anchored through a shared hypothesis.");

  m.def("hermeneutical_gap",
        [](const std::vector<std::string>& dominant_refs,
           const std::vector<std::string>& community_refs, const std::string& group,
           const std::string& dominant, const std::string& community) {
          std::vector<Transcript> dominant_owned;
          std::vector<Transcript> community_owned;
          for (const std::string& text : dominant_refs) {
            dominant_owned.push_back(transcript_of(text, std::nullopt));
          }
          for (const std::string& text : community_refs) {
            community_owned.push_back(transcript_of(text, std::nullopt));
          }
          std::vector<const Transcript*> dominant_ptrs;
          std::vector<const Transcript*> community_ptrs;
          for (const Transcript& t : dominant_owned) {
            dominant_ptrs.push_back(&t);
          }
          for (const Transcript& t : community_owned) {
            community_ptrs.push_back(&t);
          }
          convwer::GapResult gap = convwer::hermeneutical_gap(
              group, PolicyId{dominant, convwer::PolicyKind::kCustom, dominant},
              PolicyId{community, convwer::PolicyKind::kCustom, community}, dominant_ptrs,
              community_ptrs);
          py::dict out;
          out["group"] = gap.group;
          out["dominant_policy"] = gap.dominant_policy.name;
          out["community_policy"] = gap.community_policy.name;
          out["gap"] = convwer::rational_to_double(gap.gap);
          out["gap_pct"] = convwer::format_pct(gap.gap);
          return out;
        },
        py::arg("dominant_refs"), py::arg("community_refs"), py::arg("group") = "",
        py::arg("dominant") = "nonverbatim", py::arg("community") = "verbatim",
        "Utterance-averaged WER between paired reference transcripts; the dominant side is the "
        "denominator.");

  m.def("parse_chat", [](const std::string& raw, const std::set<std::string>& tiers) {
    convwer::ChatParseResult parsed = convwer::parse_chat(raw, tiers, defaults().normalization);
    py::list tokens;
    for (const Token& token : parsed.transcript.tokens) {
      tokens.append(py::make_tuple(token.surface, convwer::token_klass_name(token.klass)));
    }
    py::dict out;
    out["text"] = convwer::serialize_tokens(parsed.transcript.tokens, defaults().filler_lexicon);
    out["tokens"] = tokens;
    out["empty_warning"] = parsed.empty_warning;
    return out;
  },
        py::arg("raw"), py::arg("tiers") = std::set<std::string>{"PAR"},
        "Parse one CHAT document into a verbatim token stream, keeping the given main tiers.");

  m.def("evaluate",
        [](const std::string& manifest, const std::string& hypotheses, const std::string& out_dir,
           const std::string& config, unsigned workers, const std::vector<std::string>& formats,
           bool overwrite, bool dump_alignments, const std::string& timestamp) {
          convwer::EvaluateArgs args;
          args.manifest_path = manifest;
          args.hypotheses_path = hypotheses;
          args.out_dir = out_dir;
          args.config_path = config;
          args.workers = workers;
          args.formats = formats;
          args.overwrite = overwrite;
          args.dump_alignments = dump_alignments;
          args.timestamp = timestamp;
          return convwer::run_evaluate(args);
        },
        py::arg("manifest"), py::arg("hypotheses"), py::arg("out_dir"), py::arg("config") = "",
        py::arg("workers") = 0, py::arg("formats") = std::vector<std::string>{"csv"},
        py::arg("overwrite") = false, py::arg("dump_alignments") = false,
        py::arg("timestamp") = "", py::call_guard<py::gil_scoped_release>(),
        "Run a full evaluation over manifest and hypotheses files; writes report files and "
        "returns the CLI exit code (0 ok, 1 validation, 2 I/O).");

  m.def("derive_manifest",
        [](const std::string& manifest, const std::string& policy, const std::string& config,
           const std::string& out_path, bool overwrite) {
          convwer::DeriveArgs args;
          args.manifest_path = manifest;
          args.policy = policy;
          args.config_path = config;
          args.out_path = out_path;
          args.overwrite = overwrite;
          return convwer::run_derive(args);
        },
        py::arg("manifest"), py::arg("policy"), py::arg("config") = "", py::arg("out_path") = "",
        py::arg("overwrite") = false, py::call_guard<py::gil_scoped_release>(),
        "Fill in one convention's references across a manifest from its verbatim references; "
        "returns the CLI exit code.");

  m.def("chat_import",
        [](const std::string& chat_dir, const std::string& out_path, const std::string& config,
           bool overwrite) {
          convwer::ChatImportArgs args;
          args.chat_dir = chat_dir;
          args.out_path = out_path;
          args.config_path = config;
          args.overwrite = overwrite;
          return convwer::run_chat_import(args);
        },
        py::arg("chat_dir"), py::arg("out_path"), py::arg("config") = "",
        py::arg("overwrite") = false, py::call_guard<py::gil_scoped_release>(),
        "Build a verbatim manifest from a directory of CHAT files; returns the CLI exit code.");
}
