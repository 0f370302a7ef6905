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

// Solves the 2x2 game u = (8, -6; -2, 2) with leader actions at -100 and +100
// under Gaussian observation noise of increasing strength, and shows how the
// equilibrium payoff moves from the pure min-max value toward the Nash value.

#include <cstdio>

#include "ncg/ncg.hpp"

int main() {
  const ncg::MatrixGame game({{8, -6}, {-2, 2}}, {-100, 100});
  const auto nash = ncg::solve_matrix_nash(game);
  std::printf("Nash: p1*=%.6f p2*=%.6f value=%.6f\n", nash.p1_star[0], nash.p2_star[0], nash.value);
  std::printf("pure min-max: %.6f\n\n", ncg::pure_minmax(game).value);

  std::printf("%10s %12s %12s %12s\n", "sigma", "q_dagger", "v_dagger", "threshold");
  for (double sigma : {1.0, 10.0, 50.0, 100.0, 300.0, 1000.0, 1e4}) {
    const auto ch = ncg::GaussianChannel::for_game(game, sigma);
    const auto eq = ncg::solve_equilibrium(game, ch);
    const double threshold = eq.rule.breakpoints.empty() ? 0.0 : eq.rule.breakpoints.front();
    std::printf("%10.1f %12.6f %12.6f %12.4f\n", sigma, eq.commitment[0], eq.value, threshold);
  }
  return 0;
}
