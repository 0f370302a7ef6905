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

#include "ncg/game.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

namespace ncg {
namespace {

const MatrixGame kFig1a({{8, -6}, {-2, 2}}, {-100, 100});
const MatrixGame kFig1b({{-5, 1}, {-6, 3}}, {-100, 100});
const MatrixGame kPennies({{1, -1}, {-1, 1}});

MixedStrategy random_strategy(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(n);
  for (double& x : w) x = e(rng);
  return MixedStrategy::normalized(w);
}

MatrixGame random_game(std::size_t m1, std::size_t m2, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<std::vector<double>> p(m1, std::vector<double>(m2));
  for (auto& row : p)
    for (double& x : row) x = u(rng);
  return MatrixGame(p);
}

TEST(MixedStrategyTest, RejectsInvalidVectors) {
  EXPECT_THROW(MixedStrategy({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(MixedStrategy({1.2, -0.2}), std::invalid_argument);
  EXPECT_THROW(MixedStrategy(std::vector<double>{}), std::invalid_argument);
  EXPECT_NO_THROW(MixedStrategy({0.45, 0.55}));
  EXPECT_TRUE(MixedStrategy::pure(3, 1).is_pure());
}

TEST(MatrixGameTest, ValidatesShapeAndEmbeddings) {
  EXPECT_THROW(MatrixGame({{1, 2}}), std::invalid_argument);
  EXPECT_THROW(MatrixGame(std::vector<std::vector<double>>{{1}, {2}}), std::invalid_argument);
  EXPECT_THROW(MatrixGame({{1, 2}, {3}}), std::invalid_argument);
  EXPECT_THROW(MatrixGame({{1, 2}, {3, 4}}, {1, 1}), std::invalid_argument);
  EXPECT_THROW(MatrixGame({{1, 2}, {3, 4}}, {1, 0}), std::invalid_argument);
  EXPECT_THROW(MatrixGame({{1, std::nan("")}, {3, 4}}), std::invalid_argument);
}

TEST(ExpectedPayoffStaticTest, Examples) {
  EXPECT_DOUBLE_EQ(expected_payoff_static(MixedStrategy({1, 0}), MixedStrategy({1, 0}), kFig1a), 8.0);
  EXPECT_DOUBLE_EQ(expected_payoff_static(MixedStrategy({0.5, 0.5}), MixedStrategy({0.5, 0.5}), kPennies), 0.0);
  // Bilinear form by hand: (2/9)(8*4/9 - 6*5/9) + (7/9)(-2*4/9 + 2*5/9) = 2/9.
  EXPECT_NEAR(expected_payoff_static(MixedStrategy({2.0 / 9, 7.0 / 9}), MixedStrategy({4.0 / 9, 5.0 / 9}), kFig1a),
              2.0 / 9, 1e-15);
  EXPECT_THROW(expected_payoff_static(MixedStrategy({1, 0, 0}), MixedStrategy({1, 0}), kFig1a),
               std::invalid_argument);
}

TEST(ExpectedPayoffStaticTest, IsBilinear) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_game(3, 4, rng);
    const auto a = random_strategy(3, rng), b = random_strategy(3, rng);
    const auto p2 = random_strategy(4, rng), p2b = random_strategy(4, rng);
    const double alpha = unit(rng);
    std::vector<double> mix1(3), mix2(4);
    for (std::size_t i = 0; i < 3; ++i) mix1[i] = alpha * a[i] + (1 - alpha) * b[i];
    for (std::size_t j = 0; j < 4; ++j) mix2[j] = alpha * p2[j] + (1 - alpha) * p2b[j];
    EXPECT_NEAR(expected_payoff_static(MixedStrategy::normalized(mix1), p2, g),
                alpha * expected_payoff_static(a, p2, g) + (1 - alpha) * expected_payoff_static(b, p2, g), 1e-12);
    EXPECT_NEAR(expected_payoff_static(a, MixedStrategy::normalized(mix2), g),
                alpha * expected_payoff_static(a, p2, g) + (1 - alpha) * expected_payoff_static(a, p2b, g), 1e-12);
  }
}

TEST(UHatTest, Examples) {
  auto r = u_hat(MixedStrategy({4.0 / 9, 5.0 / 9}), kFig1a);
  EXPECT_NEAR(r.value, 2.0 / 9, 1e-15);
  EXPECT_EQ(r.argmax_rows, (std::vector<std::size_t>{0, 1}));

  r = u_hat(MixedStrategy({1, 0}), kFig1a);
  EXPECT_EQ(r.value, 8.0);
  EXPECT_EQ(r.argmax_rows, (std::vector<std::size_t>{0}));

  // Row payoffs are -2 and -1.5: the second row wins.
  r = u_hat(MixedStrategy({0.5, 0.5}), kFig1b);
  EXPECT_DOUBLE_EQ(r.value, -1.5);
  EXPECT_EQ(r.argmax_rows, (std::vector<std::size_t>{1}));
}

TEST(UHatTest, DominatesEveryFollowerStrategy) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_game(4, 3, rng);
    const auto p2 = random_strategy(3, rng);
    const double top = u_hat(p2, g).value;
    for (int k = 0; k < 10; ++k) EXPECT_GE(top + 1e-12, expected_payoff_static(random_strategy(4, rng), p2, g));
  }
}

TEST(PureMinMaxTest, Examples) {
  EXPECT_EQ(pure_minmax(kFig1a).col, 1u);
  EXPECT_EQ(pure_minmax(kFig1a).value, 2.0);
  EXPECT_EQ(pure_minmax(kFig1b).col, 0u);
  EXPECT_EQ(pure_minmax(kFig1b).value, -5.0);
  EXPECT_EQ(pure_minmax(MatrixGame({{3.5, 3.5}, {3.5, 3.5}})).value, 3.5);
}

TEST(PureMaxMinTest, Examples) {
  EXPECT_EQ(pure_maxmin(kFig1b).row, 0u);
  EXPECT_EQ(pure_maxmin(kFig1b).value, -5.0);
  EXPECT_EQ(pure_maxmin(kFig1a).row, 1u);
  EXPECT_EQ(pure_maxmin(kFig1a).value, -2.0);
  EXPECT_EQ(pure_maxmin(MatrixGame({{0, 0}, {0, 0}})).value, 0.0);
}

TEST(SolveMatrixNashTest, Fig1aInteriorEquilibrium) {
  const auto ne = solve_matrix_nash(kFig1a);
  EXPECT_NEAR(ne.p1_star[0], 2.0 / 9, 1e-15);
  EXPECT_NEAR(ne.p2_star[0], 4.0 / 9, 1e-15);
  EXPECT_NEAR(ne.value, 2.0 / 9, 1e-15);
}

TEST(SolveMatrixNashTest, PureSaddle) {
  const auto ne = solve_matrix_nash(kFig1b);
  EXPECT_EQ(ne.p1_star[0], 1.0);
  EXPECT_EQ(ne.p2_star[0], 1.0);
  EXPECT_EQ(ne.value, -5.0);
}

TEST(SolveMatrixNashTest, MatchingPennies) {
  const auto ne = solve_matrix_nash(kPennies);
  EXPECT_DOUBLE_EQ(ne.p1_star[0], 0.5);
  EXPECT_DOUBLE_EQ(ne.p2_star[0], 0.5);
  EXPECT_DOUBLE_EQ(ne.value, 0.0);
}

TEST(SolveMatrixNashTest, LinearProgramOnRockPaperScissors) {
  const auto ne = solve_matrix_nash(MatrixGame({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}}));
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_NEAR(ne.p1_star[k], 1.0 / 3, 1e-12);
    EXPECT_NEAR(ne.p2_star[k], 1.0 / 3, 1e-12);
  }
  EXPECT_NEAR(ne.value, 0.0, 1e-12);
}

TEST(SolveMatrixNashTest, LinearProgramAgreesWithClosedFormOnEmbedded2x2) {
  // A strictly dominated third row forces the LP path; the equilibrium must
  // be the 2x2 one.
  const auto ne = solve_matrix_nash(MatrixGame({{8, -6}, {-2, 2}, {-7, -7}}));
  EXPECT_NEAR(ne.p1_star[0], 2.0 / 9, 1e-12);
  EXPECT_NEAR(ne.p1_star[2], 0.0, 1e-12);
  EXPECT_NEAR(ne.p2_star[0], 4.0 / 9, 1e-12);
  EXPECT_NEAR(ne.value, 2.0 / 9, 1e-12);
}

TEST(SolveMatrixNashTest, DegenerateGameTerminates) {
  // Duplicate rows and columns make the LP degenerate.
  const MatrixGame g({{1, 1, -1}, {1, 1, -1}, {-1, -1, 1}});
  const auto ne = solve_matrix_nash(g);
  EXPECT_NEAR(ne.value, 0.0, 1e-12);
}

// Equilibrium conditions and the pure-strategy bracket on random games.
TEST(SolveMatrixNashTest, RandomGamesSatisfyEquilibriumConditions) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m1 = 2 + trial % 4, m2 = 2 + (trial / 4) % 4;
    const auto g = random_game(m1, m2, rng);
    const auto ne = solve_matrix_nash(g);
    for (std::size_t i = 0; i < m1; ++i)
      EXPECT_LE(expected_payoff_static(MixedStrategy::pure(m1, i), ne.p2_star, g), ne.value + 1e-9);
    for (std::size_t j = 0; j < m2; ++j)
      EXPECT_GE(expected_payoff_static(ne.p1_star, MixedStrategy::pure(m2, j), g), ne.value - 1e-9);
    EXPECT_LE(pure_maxmin(g).value, ne.value + 1e-9);
    EXPECT_LE(ne.value, pure_minmax(g).value + 1e-9);
    EXPECT_NEAR(u_hat(ne.p2_star, g).value, ne.value, 1e-9);
  }
}

}  // namespace
}  // namespace ncg
