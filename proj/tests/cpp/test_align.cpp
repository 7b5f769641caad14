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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstddef>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "convwer/align.hpp"
#include "convwer/errors.hpp"
#include "convwer/textnorm.hpp"

using namespace convwer;

namespace {

std::vector<Token> toks(const std::string& text) {
  return tokenize(text, NormalizationScheme{});
}

// Reference edit-distance oracle: plain memoized recursion, no backtrace.
// dist(i, j) = cheapest way to explain hyp[i..) against ref[j..).
class Oracle {
 public:
  Oracle(const std::vector<Token>& hyp, const std::vector<Token>& ref) : hyp_(hyp), ref_(ref) {}

  std::size_t distance() { return solve(0, 0); }

 private:
  std::size_t solve(std::size_t i, std::size_t j) {
    if (i == hyp_.size()) {
      return ref_.size() - j;  // remaining reference tokens were deleted
    }
    if (j == ref_.size()) {
      return hyp_.size() - i;  // remaining hypothesis tokens were inserted
    }
    auto key = std::make_pair(i, j);
    auto found = memo_.find(key);
    if (found != memo_.end()) {
      return found->second;
    }
    std::size_t best = solve(i + 1, j + 1) + (hyp_[i].surface == ref_[j].surface ? 0 : 1);
    std::size_t via_insert = solve(i + 1, j) + 1;
    std::size_t via_delete = solve(i, j + 1) + 1;
    if (via_insert < best) best = via_insert;
    if (via_delete < best) best = via_delete;
    memo_.emplace(key, best);
    return best;
  }

  const std::vector<Token>& hyp_;
  const std::vector<Token>& ref_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo_;
};

// Structural invariants every alignment must satisfy regardless of input.
void check_wellformed(const Alignment& al, std::size_t hyp_len, std::size_t ref_len) {
  CHECK(al.hyp_len == hyp_len);
  CHECK(al.ref_len == ref_len);
  CHECK(al.matches + al.substitutions + al.insertions == hyp_len);
  CHECK(al.matches + al.substitutions + al.deletions == ref_len);

  std::size_t next_hyp = 0;
  std::size_t next_ref = 0;
  std::size_t s = 0, d = 0, ins = 0, m = 0;
  for (const EditOp& op : al.ops) {
    switch (op.kind) {
      case EditKind::kMatch:
      case EditKind::kSubstitute:
        REQUIRE(op.hyp_index.has_value());
        REQUIRE(op.ref_index.has_value());
        CHECK(*op.hyp_index == next_hyp++);
        CHECK(*op.ref_index == next_ref++);
        (op.kind == EditKind::kMatch ? m : s)++;
        break;
      case EditKind::kDelete:
        CHECK(!op.hyp_index.has_value());
        REQUIRE(op.ref_index.has_value());
        CHECK(*op.ref_index == next_ref++);
        ++d;
        break;
      case EditKind::kInsert:
        REQUIRE(op.hyp_index.has_value());
        CHECK(!op.ref_index.has_value());
        CHECK(*op.hyp_index == next_hyp++);
        ++ins;
        break;
    }
  }
  CHECK(next_hyp == hyp_len);
  CHECK(next_ref == ref_len);
  CHECK(m == al.matches);
  CHECK(s == al.substitutions);
  CHECK(d == al.deletions);
  CHECK(ins == al.insertions);
}

}  // namespace

TEST_CASE("identical sequences align with zero errors") {
  std::vector<Token> ref = toks("the dog ran home");
  Alignment al = align(ref, ref);
  CHECK(al.errors() == 0);
  CHECK(al.matches == 4);
  CHECK(wer(al) == Rational(0));
  check_wellformed(al, 4, 4);
}

TEST_CASE("empty hypothesis scores all deletions, wer one") {
  Alignment al = align(std::vector<Token>{}, toks("a b c"));
  CHECK(al.deletions == 3);
  CHECK(al.matches == 0);
  CHECK(wer(al) == Rational(1));
  for (const EditOp& op : al.ops) {
    CHECK(op.kind == EditKind::kDelete);
  }
  check_wellformed(al, 0, 3);
}

TEST_CASE("empty reference is rejected") {
  CHECK_THROWS_AS(align(toks("a"), std::vector<Token>{}), ValidationError);
  CHECK_THROWS_AS(align(std::vector<Token>{}, std::vector<Token>{}), ValidationError);
}

TEST_CASE("wer can exceed one and stays exact") {
  Alignment al = align(toks("b a b"), toks("a"));
  CHECK(al.insertions == 2);
  CHECK(al.matches == 1);
  CHECK(wer(al) == Rational(2));
  check_wellformed(al, 3, 1);
}

TEST_CASE("wer is asymmetric, the reference supplies the denominator") {
  std::vector<Token> longer = toks("a b c d");
  std::vector<Token> shorter = toks("a b");
  CHECK(wer(align(shorter, longer)) == Rational(2, 4));
  CHECK(wer(align(longer, shorter)) == Rational(2, 2));
}

TEST_CASE("token class never affects matching") {
  std::vector<Token> hyp = {Token("um", TokenKlass::kWord), Token("think", TokenKlass::kWord)};
  std::vector<Token> ref = {Token("um", TokenKlass::kFiller),
                            Token("think", TokenKlass::kHedgeMarker)};
  Alignment al = align(hyp, ref);
  CHECK(al.errors() == 0);
  CHECK(al.matches == 2);
}

TEST_CASE("backtrace prefers match over substitute") {
  // "x" can match either ref copy; the canonical path deletes the first
  // copy and matches the later one.
  Alignment al = align(toks("x"), toks("x x"));
  REQUIRE(al.ops.size() == 2);
  CHECK(al.ops[0].kind == EditKind::kDelete);
  CHECK(*al.ops[0].ref_index == 0);
  CHECK(al.ops[1].kind == EditKind::kMatch);
  CHECK(*al.ops[1].hyp_index == 0);
  CHECK(*al.ops[1].ref_index == 1);
}

TEST_CASE("backtrace prefers substitutions over delete plus insert") {
  // Swapped words: two substitutions and one delete/match/insert triple
  // tie on cost 2; the canonical alignment is the substitution pair.
  Alignment al = align(toks("b a"), toks("a b"));
  CHECK(al.substitutions == 2);
  CHECK(al.deletions == 0);
  CHECK(al.insertions == 0);
  REQUIRE(al.ops.size() == 2);
  CHECK(al.ops[0].kind == EditKind::kSubstitute);
  CHECK(al.ops[1].kind == EditKind::kSubstitute);
}

TEST_CASE("deletion before match, canonical op order for a missed word") {
  Alignment al = align(toks("b"), toks("a b"));
  REQUIRE(al.ops.size() == 2);
  CHECK(al.ops[0].kind == EditKind::kDelete);
  CHECK(al.ops[1].kind == EditKind::kMatch);
  CHECK(wer(al) == Rational(1, 2));
}

TEST_CASE("operation rates partition wer exactly") {
  Alignment al = align(toks("a x c d"), toks("a b c"));
  CHECK(al.substitutions == 1);
  CHECK(al.insertions == 1);
  CHECK(al.deletions == 0);
  OperationRates rates = operation_rates(al);
  CHECK(rates.substitution_rate == Rational(1, 3));
  CHECK(rates.insertion_rate == Rational(1, 3));
  CHECK(rates.deletion_rate == Rational(0));
  CHECK(rates.insertion_rate + rates.deletion_rate + rates.substitution_rate == wer(al));
}

TEST_CASE("alignment dump format, one tab-separated line per op") {
  std::vector<Token> hyp = toks("a x c d");
  std::vector<Token> ref = toks("a b c");
  Alignment al = align(hyp, ref);
  CHECK(format_alignment_dump(al, hyp, ref) ==
        "match\t0\t0\ta\ta\n"
        "substitute\t1\t1\tx\tb\n"
        "match\t2\t2\tc\tc\n"
        "insert\t3\t\td\t\n");

  std::vector<Token> hyp2 = toks("b");
  std::vector<Token> ref2 = toks("a b");
  CHECK(format_alignment_dump(align(hyp2, ref2), hyp2, ref2) ==
        "delete\t\t0\t\ta\n"
        "match\t0\t1\tb\tb\n");
}

TEST_CASE("edit kind names") {
  CHECK(std::string(edit_kind_name(EditKind::kMatch)) == "match");
  CHECK(std::string(edit_kind_name(EditKind::kSubstitute)) == "substitute");
  CHECK(std::string(edit_kind_name(EditKind::kDelete)) == "delete");
  CHECK(std::string(edit_kind_name(EditKind::kInsert)) == "insert");
}

TEST_CASE("alignment cost matches a memoized recursive oracle, randomized") {
  const char* vocab[] = {"a", "b", "c", "d", "e"};
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> hyp_len(0, 8);
  std::uniform_int_distribution<int> ref_len(1, 8);
  std::uniform_int_distribution<std::size_t> pick(0, 4);

  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<Token> hyp;
    std::vector<Token> ref;
    int hn = hyp_len(rng);
    int rn = ref_len(rng);
    for (int k = 0; k < hn; ++k) {
      hyp.emplace_back(vocab[pick(rng)], TokenKlass::kWord);
    }
    for (int k = 0; k < rn; ++k) {
      ref.emplace_back(vocab[pick(rng)], TokenKlass::kWord);
    }

    Alignment al = align(hyp, ref);
    Oracle oracle(hyp, ref);
    REQUIRE(al.errors() == oracle.distance());
    check_wellformed(al, hyp.size(), ref.size());

    OperationRates rates = operation_rates(al);
    REQUIRE(rates.insertion_rate + rates.deletion_rate + rates.substitution_rate == wer(al));
  }
}
