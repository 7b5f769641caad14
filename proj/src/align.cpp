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

#include "convwer/align.hpp"

#include <algorithm>
#include <cstdint>

#include "convwer/errors.hpp"

namespace convwer {

const char* edit_kind_name(EditKind kind) {
  switch (kind) {
    case EditKind::kMatch:
      return "match";
    case EditKind::kSubstitute:
      return "substitute";
    case EditKind::kDelete:
      return "delete";
    case EditKind::kInsert:
      return "insert";
  }
  return "match";
}

Alignment align(const std::vector<Token>& hyp, const std::vector<Token>& ref) {
  if (ref.empty()) {
    throw ValidationError("align: reference has no tokens (zero-length references are invalid)");
  }
  const std::size_t m = hyp.size();
  const std::size_t n = ref.size();

  // cost[i][j]: minimum edits turning hyp[0..i) into ref[0..j).
  // Row-major (n + 1)-wide table; full table kept for the backtrace.
  std::vector<std::uint32_t> cost((m + 1) * (n + 1));
  auto at = [n](std::size_t i, std::size_t j) { return i * (n + 1) + j; };
  for (std::size_t j = 0; j <= n; ++j) {
    cost[at(0, j)] = static_cast<std::uint32_t>(j);  // delete all of ref[0..j)
  }
  for (std::size_t i = 1; i <= m; ++i) {
    cost[at(i, 0)] = static_cast<std::uint32_t>(i);  // insert all of hyp[0..i)
    for (std::size_t j = 1; j <= n; ++j) {
      const bool equal = hyp[i - 1].surface == ref[j - 1].surface;
      std::uint32_t best = cost[at(i - 1, j - 1)] + (equal ? 0u : 1u);
      best = std::min(best, cost[at(i, j - 1)] + 1u);  // delete ref[j-1]
      best = std::min(best, cost[at(i - 1, j)] + 1u);  // insert hyp[i-1]
      cost[at(i, j)] = best;
    }
  }

  // Backtrace. Several paths can share the minimum; the fixed preference
  // match > substitute > delete > insert picks one reproducibly.
  Alignment out;
  out.ref_len = n;
  out.hyp_len = m;
  std::size_t i = m;
  std::size_t j = n;
  std::vector<EditOp> rev;
  rev.reserve(m + n);
  while (i > 0 || j > 0) {
    const std::uint32_t here = cost[at(i, j)];
    if (i > 0 && j > 0 && hyp[i - 1].surface == ref[j - 1].surface &&
        cost[at(i - 1, j - 1)] == here) {
      rev.push_back({EditKind::kMatch, i - 1, j - 1});
      --i;
      --j;
    } else if (i > 0 && j > 0 && hyp[i - 1].surface != ref[j - 1].surface &&
               cost[at(i - 1, j - 1)] + 1 == here) {
      rev.push_back({EditKind::kSubstitute, i - 1, j - 1});
      --i;
      --j;
    } else if (j > 0 && cost[at(i, j - 1)] + 1 == here) {
      rev.push_back({EditKind::kDelete, std::nullopt, j - 1});
      --j;
    } else {
      rev.push_back({EditKind::kInsert, i - 1, std::nullopt});
      --i;
    }
  }
  out.ops.assign(rev.rbegin(), rev.rend());
  for (const EditOp& op : out.ops) {
    switch (op.kind) {
      case EditKind::kMatch:
        ++out.matches;
        break;
      case EditKind::kSubstitute:
        ++out.substitutions;
        break;
      case EditKind::kDelete:
        ++out.deletions;
        break;
      case EditKind::kInsert:
        ++out.insertions;
        break;
    }
  }
  return out;
}

Alignment align(const Transcript& hyp, const Transcript& ref) {
  return align(hyp.tokens, ref.tokens);
}

Rational wer(const Alignment& alignment) {
  return Rational(static_cast<unsigned long long>(alignment.errors()),
                  static_cast<unsigned long long>(alignment.ref_len));
}

OperationRates operation_rates(const Alignment& alignment) {
  const auto n = static_cast<unsigned long long>(alignment.ref_len);
  OperationRates rates;
  rates.insertion_rate = Rational(static_cast<unsigned long long>(alignment.insertions), n);
  rates.deletion_rate = Rational(static_cast<unsigned long long>(alignment.deletions), n);
  rates.substitution_rate = Rational(static_cast<unsigned long long>(alignment.substitutions), n);
  return rates;
}

std::string format_alignment_dump(const Alignment& alignment, const std::vector<Token>& hyp,
                                  const std::vector<Token>& ref) {
  std::string out;
  for (const EditOp& op : alignment.ops) {
    out += edit_kind_name(op.kind);
    out += '\t';
    if (op.hyp_index.has_value()) {
      out += std::to_string(*op.hyp_index);
    }
    out += '\t';
    if (op.ref_index.has_value()) {
      out += std::to_string(*op.ref_index);
    }
    out += '\t';
    if (op.hyp_index.has_value()) {
      out += hyp[*op.hyp_index].surface;
    }
    out += '\t';
    if (op.ref_index.has_value()) {
      out += ref[*op.ref_index].surface;
    }
    out += '\n';
  }
  return out;
}

}  // namespace convwer
