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

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "convwer/errors.hpp"
#include "convwer/metrics.hpp"
#include "convwer/textnorm.hpp"

using namespace convwer;

namespace {

const PolicyId kVerbatim{"verbatim", PolicyKind::kVerbatim, "verbatim"};
const PolicyId kNonVerbatim{"nonverbatim", PolicyKind::kNonVerbatim, "non-verbatim"};
const PolicyId kLegal{"legal", PolicyKind::kLegal, "legal"};

UtteranceScore score(const std::string& id, const Rational& wer_value, const Rational& ins,
                     const Rational& del, const Rational& sub) {
  UtteranceScore s;
  s.utterance_id = id;
  s.wer_value = wer_value;
  s.rates.insertion_rate = ins;
  s.rates.deletion_rate = del;
  s.rates.substitution_rate = sub;
  return s;
}

Transcript ref_of(const std::string& text, const PolicyId& policy) {
  Transcript t;
  t.tokens = tokenize(text, NormalizationScheme{});
  t.policy = policy;
  return t;
}

}  // namespace

TEST_CASE("group_wer averages utterance scores exactly") {
  std::vector<UtteranceScore> scores = {
      score("u1", Rational(1, 2), Rational(0), Rational(1, 4), Rational(1, 4)),
      score("u2", Rational(1, 3), Rational(1, 3), Rational(0), Rational(0)),
  };
  GroupPolicyWer cell = group_wer("sys", "control", kVerbatim, scores);
  CHECK(cell.n_utterances == 2);
  CHECK(cell.mean_wer == Rational(5, 12));
  CHECK(cell.mean_ins == Rational(1, 6));
  CHECK(cell.mean_del == Rational(1, 8));
  CHECK(cell.mean_sub == Rational(1, 8));
  CHECK(cell.mean_ins + cell.mean_del + cell.mean_sub == cell.mean_wer);
  CHECK_THROWS_AS(group_wer("sys", "control", kVerbatim, {}), ValidationError);
}

TEST_CASE("aggregate eid subtracts the best policy mean") {
  PerPolicyScores per_policy = {
      {kVerbatim, {Rational(1, 2), Rational(1, 4)}},
      {kNonVerbatim, {Rational(1, 4), Rational(1, 4)}},
      {kLegal, {Rational(1, 2), Rational(1, 2)}},
  };
  EidResult r = eid("sys", "", per_policy, kLegal, EidMode::kAggregate);
  CHECK(r.eid == Rational(1, 4));  // mean legal 1/2, best nonverbatim mean 1/4
  CHECK(r.best_policy.name == "nonverbatim");
  CHECK(r.enforced_policy.name == "legal");
  CHECK(r.mode == EidMode::kAggregate);

  EidResult zero = eid("sys", "", per_policy, kNonVerbatim, EidMode::kAggregate);
  CHECK(zero.eid == Rational(0));
  CHECK(zero.best_policy.name == "nonverbatim");
}

TEST_CASE("aggregate eid breaks mean ties by column order") {
  PerPolicyScores per_policy = {
      {kVerbatim, {Rational(1, 4), Rational(1, 4)}},
      {kNonVerbatim, {Rational(1, 2), Rational(0)}},  // same mean 1/4
      {kLegal, {Rational(1, 2), Rational(1, 2)}},
  };
  EidResult r = eid("sys", "", per_policy, kLegal, EidMode::kAggregate);
  CHECK(r.best_policy.name == "verbatim");
  CHECK(r.eid == Rational(1, 4));
}

TEST_CASE("per-utterance eid never undercuts the aggregate") {
  PerPolicyScores per_policy = {
      {kVerbatim, {Rational(0), Rational(1, 2)}},
      {kNonVerbatim, {Rational(1, 2), Rational(0)}},
  };
  EidResult agg = eid("sys", "", per_policy, kVerbatim, EidMode::kAggregate);
  EidResult per = eid("sys", "", per_policy, kVerbatim, EidMode::kPerUtterance);
  CHECK(agg.eid == Rational(0));       // both means are 1/4
  CHECK(per.eid == Rational(1, 4));    // penalties 0 and 1/2
  CHECK(per.eid >= agg.eid);
  CHECK(per.mode == EidMode::kPerUtterance);
}

TEST_CASE("per-utterance best policy counts every achiever per utterance") {
  PerPolicyScores per_policy = {
      {kVerbatim, {Rational(0), Rational(1, 2)}},
      {kNonVerbatim, {Rational(0), Rational(0)}},  // ties utt1, wins utt2
      {kLegal, {Rational(1), Rational(1)}},
  };
  EidResult r = eid("sys", "", per_policy, kLegal, EidMode::kPerUtterance);
  CHECK(r.best_policy.name == "nonverbatim");  // two achievements to verbatim's one
  CHECK(r.eid == Rational(1));

  PerPolicyScores tied = {
      {kVerbatim, {Rational(0), Rational(1, 2)}},
      {kNonVerbatim, {Rational(1, 2), Rational(0)}},  // one achievement each
  };
  EidResult t = eid("sys", "", tied, kVerbatim, EidMode::kPerUtterance);
  CHECK(t.best_policy.name == "verbatim");  // tie resolves to column order
}

TEST_CASE("eid input validation") {
  PerPolicyScores per_policy = {{kVerbatim, {Rational(0)}}};
  CHECK_THROWS_AS(eid("sys", "", per_policy, kLegal, EidMode::kAggregate), ValidationError);
  CHECK_THROWS_AS(eid("sys", "", {}, kVerbatim, EidMode::kAggregate), ValidationError);

  PerPolicyScores ragged = {
      {kVerbatim, {Rational(0), Rational(0)}},
      {kNonVerbatim, {Rational(0)}},
  };
  CHECK_THROWS_AS(eid("sys", "", ragged, kVerbatim, EidMode::kAggregate), ValidationError);
}

TEST_CASE("eid mode names") {
  CHECK(std::string(eid_mode_name(EidMode::kAggregate)) == "aggregate");
  CHECK(std::string(eid_mode_name(EidMode::kPerUtterance)) == "per_utterance");
}

TEST_CASE("delta_eid is the signed difference and antisymmetric") {
  PerPolicyScores group_a = {
      {kVerbatim, {Rational(1, 2)}},
      {kNonVerbatim, {Rational(1, 4)}},
  };
  PerPolicyScores group_b = {
      {kVerbatim, {Rational(1, 2)}},
      {kNonVerbatim, {Rational(1, 2)}},
  };
  EidResult a = eid("sys", "fluent", group_a, kVerbatim, EidMode::kAggregate);
  EidResult b = eid("sys", "control", group_b, kVerbatim, EidMode::kAggregate);
  DeltaEidResult d = delta_eid(a, b);
  CHECK(d.delta == Rational(1, 4));
  CHECK(d.group_a == "fluent");
  CHECK(d.group_b == "control");
  CHECK(delta_eid(b, a).delta == -d.delta);

  EidResult other_system = a;
  other_system.system_id = "sys2";
  CHECK_THROWS_AS(delta_eid(other_system, b), ValidationError);

  EidResult other_mode = eid("sys", "control", group_b, kVerbatim, EidMode::kPerUtterance);
  CHECK_THROWS_AS(delta_eid(a, other_mode), ValidationError);

  EidResult other_enforced = eid("sys", "control", group_b, kNonVerbatim, EidMode::kAggregate);
  CHECK_THROWS_AS(delta_eid(a, other_enforced), ValidationError);
}

TEST_CASE("hermeneutical gap scores the community transcript against the dominant one") {
  Transcript dom1 = ref_of("the dog ran", kNonVerbatim);
  Transcript com1 = ref_of("the dog", kVerbatim);
  Transcript dom2 = ref_of("it was fine", kNonVerbatim);
  Transcript com2 = ref_of("it was fine", kVerbatim);

  GapResult gap = hermeneutical_gap("control", kNonVerbatim, kVerbatim, {&dom1, &dom2},
                                    {&com1, &com2});
  CHECK(gap.gap == Rational(1, 6));  // (1/3 + 0) / 2
  CHECK(gap.group == "control");
  CHECK(gap.dominant_policy.name == "nonverbatim");
  CHECK(gap.community_policy.name == "verbatim");

  // Swapping the roles changes the denominator: the gap is directional.
  GapResult swapped = hermeneutical_gap("control", kVerbatim, kNonVerbatim, {&com1, &com2},
                                        {&dom1, &dom2});
  CHECK(swapped.gap == Rational(1, 4));  // (1/2 + 0) / 2
  CHECK(swapped.gap != gap.gap);

  CHECK_THROWS_AS(hermeneutical_gap("control", kNonVerbatim, kVerbatim, {&dom1}, {}),
                  ValidationError);
  CHECK_THROWS_AS(hermeneutical_gap("control", kNonVerbatim, kVerbatim, {}, {}), ValidationError);
}

TEST_CASE("wer_range tracks the spread over conventions") {
  std::vector<std::pair<PolicyId, Rational>> wer_set = {
      {kVerbatim, Rational(981, 10000)},
      {kNonVerbatim, Rational(1738, 10000)},
      {kLegal, Rational(1046, 10000)},
  };
  RangeResult r = wer_range("sys", "", wer_set);
  CHECK(r.range_min == Rational(981, 10000));
  CHECK(r.range_max == Rational(1738, 10000));
  CHECK(r.width == Rational(757, 10000));
  REQUIRE(r.wer_set.size() == 3);
  CHECK(r.wer_set[0].first.name == "verbatim");  // configured order preserved
  CHECK(r.wer_set[2].second == Rational(1046, 10000));

  RangeResult single = wer_range("sys", "g", {{kVerbatim, Rational(1, 2)}});
  CHECK(single.width == Rational(0));
  CHECK(single.range_min == single.range_max);

  CHECK_THROWS_AS(wer_range("sys", "", {}), ValidationError);
}

TEST_CASE("fairness gap subtracts group means under one policy") {
  GroupPolicyWer a;
  a.system_id = "sys";
  a.group = "fluent";
  a.policy = kVerbatim;
  a.mean_wer = Rational(1, 2);
  GroupPolicyWer b = a;
  b.group = "control";
  b.mean_wer = Rational(1, 4);

  FairnessGap gap = fairness_gap(a, b);
  CHECK(gap.gap == Rational(1, 4));
  CHECK(gap.group_a == "fluent");
  CHECK(gap.group_b == "control");
  CHECK(fairness_gap(b, a).gap == -gap.gap);

  GroupPolicyWer other_policy = b;
  other_policy.policy = kLegal;
  CHECK_THROWS_AS(fairness_gap(a, other_policy), ValidationError);

  GroupPolicyWer other_system = b;
  other_system.system_id = "sys2";
  CHECK_THROWS_AS(fairness_gap(a, other_system), ValidationError);
}

TEST_CASE("inter-reference distance, direct form") {
  Transcript ref_a = ref_of("i was going home", kNonVerbatim);
  Transcript ref_b = ref_of("i was um going home", kVerbatim);
  InterReferenceDistance d = inter_reference_distance(ref_a, ref_b);
  CHECK(d.direct == Rational(1, 5));  // one deletion over |ref_b| = 5
  CHECK(!d.anchored.has_value());

  // Reversing the arguments flips the denominator.
  CHECK(inter_reference_distance(ref_b, ref_a).direct == Rational(1, 4));
}

TEST_CASE("anchored inter-reference distance composes the two alignments") {
  Transcript ref_a = ref_of("i was going home", kNonVerbatim);
  Transcript ref_b = ref_of("i was um going home", kVerbatim);

  Transcript clean_anchor = ref_of("i was going home", kVerbatim);
  InterReferenceDistance clean = inter_reference_distance(ref_a, ref_b, &clean_anchor);
  REQUIRE(clean.anchored.has_value());
  CHECK(*clean.anchored == Rational(1, 5));  // um unmatched on the b side: one deletion

  // A substitution in the anchor makes the co-paired tokens conflict.
  Transcript noisy_anchor = ref_of("i wuz going home", kVerbatim);
  InterReferenceDistance noisy = inter_reference_distance(ref_a, ref_b, &noisy_anchor);
  REQUIRE(noisy.anchored.has_value());
  CHECK(*noisy.anchored == Rational(2, 5));  // was/was conflict + um deletion

  // Tokens only ref_a has become insertions.
  InterReferenceDistance flipped = inter_reference_distance(ref_b, ref_a, &clean_anchor);
  REQUIRE(flipped.anchored.has_value());
  CHECK(*flipped.anchored == Rational(1, 4));

  // Anchor tokens aligned to neither reference contribute nothing.
  Transcript wordy_anchor = ref_of("i was really going home", kVerbatim);
  Transcript same_a = ref_of("i was going home", kNonVerbatim);
  Transcript same_b = ref_of("i was going home", kVerbatim);
  InterReferenceDistance inert = inter_reference_distance(same_a, same_b, &wordy_anchor);
  REQUIRE(inert.anchored.has_value());
  CHECK(*inert.anchored == Rational(0));
  CHECK(inert.direct == Rational(0));
}

TEST_CASE("decomposition residuals are exact") {
  CHECK(decomposition_residual_pp("9.81", "2.18", "2.81", "4.82") == Rational(0));
  CHECK(decomposition_residual_pp("17.38", "12.26", "1.30", "3.82") == Rational(0));
  CHECK(decomposition_residual_pp("10.46", "4.84", "2.33", "3.30") == Rational(1, 100));
  CHECK(range_residual_pp("9.81", "17.38", "7.57") == Rational(0));
  CHECK(range_residual_pp("1.00", "2.10", "1.20") == Rational(1, 10));
}

TEST_CASE("rational_from_decimal parses exactly and rejects junk") {
  CHECK(rational_from_decimal("9.81") == Rational(981, 100));
  CHECK(rational_from_decimal("-1.37") == Rational(-137, 100));
  CHECK(rational_from_decimal("4") == Rational(4));
  CHECK(rational_from_decimal("0.005") == Rational(1, 200));
  CHECK(rational_from_decimal("+2.5") == Rational(5, 2));
  CHECK_THROWS_AS(rational_from_decimal("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_decimal("abc"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_decimal(""), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_decimal("-"), std::invalid_argument);
}

TEST_CASE("rational_mean is exact and rejects empty input") {
  CHECK(rational_mean({Rational(1, 2), Rational(1, 4)}) == Rational(3, 8));
  CHECK(rational_mean({Rational(7)}) == Rational(7));
  CHECK_THROWS_AS(rational_mean({}), std::invalid_argument);
}

TEST_CASE("percent formatting rounds half away from zero at two decimals") {
  CHECK(format_pct(Rational(403, 10000)) == "4.03");
  CHECK(format_pct(Rational(-137, 10000)) == "-1.37");
  CHECK(format_pct(Rational(0)) == "0.00");
  CHECK(format_pct(Rational(1)) == "100.00");
  CHECK(format_pct(Rational(1, 3)) == "33.33");
  CHECK(format_pct(Rational(2, 3)) == "66.67");

  CHECK(format_pp(rational_from_decimal("7.57")) == "7.57");
  CHECK(format_pp(Rational(2345, 1000)) == "2.35");    // 2.345 rounds up
  CHECK(format_pp(Rational(-2345, 1000)) == "-2.35");  // and away from zero
  CHECK(format_pp(Rational(1, 200)) == "0.01");
  CHECK(format_pp(Rational(-1, 200)) == "-0.01");
  CHECK(format_pp(Rational(-1, 1000)) == "0.00");  // never "-0.00"
  CHECK(format_pp(Rational(999, 1000)) == "1.00");
}

TEST_CASE("published aggregate spot checks reproduce from exact arithmetic") {
  // A WER-Set of per-policy means must reproduce its published range row.
  std::vector<std::pair<PolicyId, Rational>> wer_set = {
      {kVerbatim, rational_from_decimal("9.81") / 100},
      {kNonVerbatim, rational_from_decimal("17.38") / 100},
      {kLegal, rational_from_decimal("10.46") / 100},
  };
  RangeResult r = wer_range("sys", "", wer_set);
  CHECK(format_pct(r.range_min) == "9.81");
  CHECK(format_pct(r.range_max) == "17.38");
  CHECK(format_pp((r.range_max - r.range_min) * 100) == "7.57");

  // Group EIDs and their disparity: 12.91 - 4.73 = 8.18.
  PerPolicyScores nonfluent = {
      {kVerbatim, {rational_from_decimal("17.53") / 100}},
      {kNonVerbatim, {rational_from_decimal("30.44") / 100}},
  };
  PerPolicyScores control = {
      {kVerbatim, {rational_from_decimal("4.03") / 100}},
      {kNonVerbatim, {rational_from_decimal("8.76") / 100}},
  };
  EidResult eid_nonfluent = eid("sys", "nonfluent", nonfluent, kNonVerbatim, EidMode::kAggregate);
  EidResult eid_control = eid("sys", "control", control, kNonVerbatim, EidMode::kAggregate);
  CHECK(format_pct(eid_nonfluent.eid) == "12.91");
  CHECK(format_pct(eid_control.eid) == "4.73");
  CHECK(format_pct(delta_eid(eid_nonfluent, eid_control).delta) == "8.18");
}

TEST_CASE("random eid properties: nonnegative, zero when enforced is best") {
  std::mt19937 rng(7070707);
  std::uniform_int_distribution<int> num(0, 8);
  std::uniform_int_distribution<int> n_utts(1, 6);
  std::uniform_int_distribution<int> n_pols(1, 4);

  for (int trial = 0; trial < 2000; ++trial) {
    int utts = n_utts(rng);
    int pols = n_pols(rng);
    PerPolicyScores per_policy;
    for (int p = 0; p < pols; ++p) {
      std::vector<Rational> column;
      for (int u = 0; u < utts; ++u) {
        column.emplace_back(num(rng), 8);
      }
      per_policy.emplace_back(PolicyId{"p" + std::to_string(p), PolicyKind::kCustom,
                                       "p" + std::to_string(p)},
                              std::move(column));
    }
    const PolicyId& enforced = per_policy[static_cast<std::size_t>(trial) % per_policy.size()].first;
    EidResult agg = eid("sys", "", per_policy, enforced, EidMode::kAggregate);
    EidResult per = eid("sys", "", per_policy, enforced, EidMode::kPerUtterance);
    REQUIRE(agg.eid >= Rational(0));
    REQUIRE(per.eid >= agg.eid);
    if (agg.best_policy.name == enforced.name) {
      REQUIRE(agg.eid == Rational(0));
    }
  }
}
