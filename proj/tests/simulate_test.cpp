// Copyright 2026 The ncg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ncg/simulate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ncg/equilibrium.hpp"

namespace ncg {
namespace {

const MatrixGame kFig1a({{8, -6}, {-2, 2}}, {-100, 100});
const GaussianChannel kSym100(100.0, {-100.0, 100.0});

TEST(RunningStatsTest, MergeMatchesSequentialAccumulation) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(5.0, 3.0);
  RunningStats all, a, b;
  for (int k = 0; k < 1000; ++k) {
    const double x = n(rng);
    all.add(x);
    (k < 300 ? a : b).add(x);
  }
  a.merge(b);
  EXPECT_EQ(a.count(), 1000u);
  EXPECT_NEAR(a.mean(), all.mean(), 1e-12);
  EXPECT_NEAR(a.sample_variance(), all.sample_variance(), 1e-10);
  RunningStats empty;
  empty.merge(all);
  EXPECT_EQ(empty.mean(), all.mean());
}

TEST(SampleIndexTest, FrequenciesAndZeroMass) {
  const auto p = MixedStrategy({0.2, 0.0, 0.8});
  Rng rng(3);
  std::vector<int> counts(3, 0);
  const int n = 200000;
  for (int k = 0; k < n; ++k) ++counts[sample_index(p, rng)];
  EXPECT_EQ(counts[1], 0);
  EXPECT_NEAR(counts[0] / static_cast<double>(n), 0.2, 4 * std::sqrt(0.16 / n));
}

TEST(PlayOnceTest, ConstantGameAlwaysPaysTheConstant) {
  const MatrixGame g({{3, 3}, {3, 3}}, {-100, 100});
  const auto p2 = MixedStrategy({0.3, 0.7});
  const auto rule = canonical_rule(g, kSym100, p2);
  Rng rng(5);
  for (int k = 0; k < 1000; ++k) EXPECT_EQ(play_once(g, kSym100, rule, p2, rng), 3.0);
}

TEST(PlayOnceTest, PureCommitmentInTheQuietLimitPaysColumnMax) {
  const GaussianChannel quiet(0.2, {-100.0, 100.0});
  Rng rng(6);
  for (std::size_t j = 0; j < 2; ++j) {
    const auto p2 = MixedStrategy::pure(2, j);
    const auto rule = canonical_rule(kFig1a, quiet, p2);
    for (int k = 0; k < 1000; ++k) EXPECT_EQ(play_once(kFig1a, quiet, rule, p2, rng), j == 0 ? 8.0 : 2.0);
  }
}

TEST(PlayOnceTest, FixedSeedReproducesTheSequence) {
  const auto p2 = MixedStrategy({0.45, 0.55});
  const auto rule = canonical_rule(kFig1a, kSym100, p2);
  Rng a(11), b(11);
  for (int k = 0; k < 1000; ++k) EXPECT_EQ(play_once(kFig1a, kSym100, rule, p2, a), play_once(kFig1a, kSym100, rule, p2, b));
}

TEST(EstimateValueTest, MatchesAnalyticValue) {
  const auto p2 = MixedStrategy({0.45, 0.55});
  const auto rule = canonical_rule(kFig1a, kSym100, p2);
  const double analytic = expected_payoff_noisy(kFig1a, kSym100, rule, p2);
  const auto r = estimate_value(kFig1a, kSym100, rule, p2, 1000000, 2024);
  EXPECT_LE(std::abs(r.mean - analytic), 4 * r.std_error);
  EXPECT_LT(r.std_error, 0.02);
  EXPECT_EQ(r.samples, 1000000u);
  EXPECT_EQ(r.seed, 2024u);
}

TEST(EstimateValueTest, TwoSeedsDifferButAgreeWithAnalytic) {
  const auto p2 = MixedStrategy({0.45, 0.55});
  const auto rule = canonical_rule(kFig1a, kSym100, p2);
  const double analytic = expected_payoff_noisy(kFig1a, kSym100, rule, p2);
  const auto a = estimate_value(kFig1a, kSym100, rule, p2, 200000, 1);
  const auto b = estimate_value(kFig1a, kSym100, rule, p2, 200000, 2);
  EXPECT_NE(a.mean, b.mean);
  EXPECT_LE(std::abs(a.mean - analytic), 4 * a.std_error);
  EXPECT_LE(std::abs(b.mean - analytic), 4 * b.std_error);
}

TEST(EstimateValueTest, ObservationIgnoringRuleMatchesStaticPayoff) {
  const GaussianChannel loud(1e4 * 200.0, {-100.0, 100.0});
  const auto p2 = MixedStrategy({0.45, 0.55});
  const auto row = u_hat(p2, kFig1a).argmax_rows.front();
  const auto r = estimate_value(kFig1a, loud, DecisionRule::constant(row), p2, 200000, 9);
  const double omega = expected_payoff_static(MixedStrategy::pure(2, row), p2, kFig1a);
  EXPECT_LE(std::abs(r.mean - omega), 4 * r.std_error);
}

TEST(EstimateValueTest, IndependentOfThreadCount) {
  const auto p2 = MixedStrategy({0.45, 0.55});
  const auto rule = canonical_rule(kFig1a, kSym100, p2);
  const auto a = estimate_value(kFig1a, kSym100, rule, p2, 100001, 77, 1);
  const auto b = estimate_value(kFig1a, kSym100, rule, p2, 100001, 77, 7);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(EstimateValueTest, StandardErrorScalesAsInverseRootN) {
  const auto p2 = MixedStrategy({0.45, 0.55});
  const auto rule = canonical_rule(kFig1a, kSym100, p2);
  const auto small = estimate_value(kFig1a, kSym100, rule, p2, 10000, 4);
  const auto large = estimate_value(kFig1a, kSym100, rule, p2, 1000000, 4);
  const double ratio = small.std_error / large.std_error;
  EXPECT_GE(ratio, 8.0);
  EXPECT_LE(ratio, 12.0);
}

TEST(EstimateValueTest, CanonicalRuleDominatesFixedActions) {
  const auto p2 = MixedStrategy({0.45, 0.55});
  const auto canon = estimate_value(kFig1a, kSym100, canonical_rule(kFig1a, kSym100, p2), p2, 400000, 10);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto fixed = estimate_value(kFig1a, kSym100, DecisionRule::constant(i), p2, 400000, 20 + i);
    const double se = std::hypot(canon.std_error, fixed.std_error);
    EXPECT_GE(canon.mean, fixed.mean - 4 * se);
  }
}

TEST(EstimateValueTest, EdgeCases) {
  const auto p2 = MixedStrategy({0.45, 0.55});
  const auto rule = canonical_rule(kFig1a, kSym100, p2);
  EXPECT_THROW(estimate_value(kFig1a, kSym100, rule, p2, 0, 1), std::invalid_argument);
  const auto one = estimate_value(kFig1a, kSym100, rule, p2, 1, 1);
  EXPECT_EQ(one.std_error, 0.0);
  EXPECT_EQ(one.samples, 1u);
  EXPECT_THROW(estimate_value(kFig1a, kSym100, DecisionRule::constant(5), p2, 10, 1), std::invalid_argument);
}

}  // namespace
}  // namespace ncg
