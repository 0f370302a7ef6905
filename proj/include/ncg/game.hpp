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

#ifndef NCG_GAME_HPP_
#define NCG_GAME_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ncg {

// Absolute tie tolerance for argmax sets on the payoff scale.
inline constexpr double kPayoffTieTol = 1e-12;

// A point in the probability simplex over a finite action set.
class MixedStrategy {
 public:
  static constexpr double kSumTol = 1e-12;

  MixedStrategy() = default;
  explicit MixedStrategy(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) {
      throw std::invalid_argument("MixedStrategy: empty probability vector");
    }
    double sum = 0.0;
    for (double p : probs_) {
      if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw std::invalid_argument("MixedStrategy: entry outside [0,1]");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTol) {
      throw std::invalid_argument("MixedStrategy: entries do not sum to 1");
    }
  }

  static MixedStrategy pure(std::size_t n, std::size_t index) {
    if (index >= n) throw std::out_of_range("MixedStrategy::pure: index out of range");
    std::vector<double> p(n, 0.0);
    p[index] = 1.0;
    return MixedStrategy(std::move(p));
  }

  // Two-action strategy (q, 1-q).
  static MixedStrategy binary(double q) { return MixedStrategy({q, 1.0 - q}); }

  static MixedStrategy uniform(std::size_t n) {
    return MixedStrategy(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  // Clamps tiny negatives and rescales; for solver outputs carrying roundoff.
  static MixedStrategy normalized(std::vector<double> weights) {
    double sum = 0.0;
    for (double& w : weights) {
      w = std::max(w, 0.0);
      sum += w;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("MixedStrategy::normalized: zero mass");
    for (double& w : weights) w /= sum;
    return MixedStrategy(std::move(weights));
  }

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  bool is_pure() const {
    return std::count_if(probs_.begin(), probs_.end(), [](double p) { return p > 0.0; }) == 1;
  }

 private:
  std::vector<double> probs_;
};

// Finite zero-sum game. Rows are follower actions (maximizer), columns are
// leader actions (minimizer). Each leader action carries a real embedding
// that is fed into the observation channel.
class MatrixGame {
 public:
  MatrixGame(std::vector<std::vector<double>> payoffs, std::vector<double> leader_embeddings)
      : embeddings_(std::move(leader_embeddings)) {
    rows_ = payoffs.size();
    if (rows_ < 2) throw std::invalid_argument("MatrixGame: need at least 2 follower actions");
    cols_ = payoffs.front().size();
    if (cols_ < 2) throw std::invalid_argument("MatrixGame: need at least 2 leader actions");
    payoffs_.reserve(rows_ * cols_);
    for (const auto& row : payoffs) {
      if (row.size() != cols_) throw std::invalid_argument("MatrixGame: ragged payoff matrix");
      for (double u : row) {
        if (!std::isfinite(u)) throw std::invalid_argument("MatrixGame: non-finite payoff");
        payoffs_.push_back(u);
      }
    }
    if (embeddings_.size() != cols_) {
      throw std::invalid_argument("MatrixGame: leader_embeddings length must equal column count");
    }
    for (std::size_t j = 1; j < cols_; ++j) {
      if (!(embeddings_[j] > embeddings_[j - 1])) {
        throw std::invalid_argument("MatrixGame: leader_embeddings must be strictly increasing");
      }
    }
  }

  // Embeddings default to 0, 1, ..., m2-1.
  explicit MatrixGame(std::vector<std::vector<double>> payoffs)
      : MatrixGame(payoffs, default_embeddings(payoffs.empty() ? 0 : payoffs.front().size())) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return payoffs_[i * cols_ + j]; }
  std::span<const double> leader_embeddings() const { return embeddings_; }

  // alpha * u + beta; used for equivariance checks.
  MatrixGame affine(double alpha, double beta) const {
    std::vector<std::vector<double>> u(rows_, std::vector<double>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) u[i][j] = alpha * (*this)(i, j) + beta;
    return MatrixGame(std::move(u), embeddings_);
  }

 private:
  static std::vector<double> default_embeddings(std::size_t n) {
    std::vector<double> e(n);
    std::iota(e.begin(), e.end(), 0.0);
    return e;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> payoffs_;
  std::vector<double> embeddings_;
};

namespace detail {

inline void require_rows(const MatrixGame& g, const MixedStrategy& p1) {
  if (p1.size() != g.rows()) throw std::invalid_argument("follower strategy dimension mismatch");
}
inline void require_cols(const MatrixGame& g, const MixedStrategy& p2) {
  if (p2.size() != g.cols()) throw std::invalid_argument("leader strategy dimension mismatch");
}

// Expected payoff of each row against p2.
inline std::vector<double> row_payoffs(const MatrixGame& g, const MixedStrategy& p2) {
  std::vector<double> out(g.rows(), 0.0);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) out[i] += g(i, j) * p2[j];
  return out;
}

inline std::vector<double> col_payoffs(const MatrixGame& g, const MixedStrategy& p1) {
  std::vector<double> out(g.cols(), 0.0);
  for (std::size_t j = 0; j < g.cols(); ++j)
    for (std::size_t i = 0; i < g.rows(); ++i) out[j] += p1[i] * g(i, j);
  return out;
}

}  // namespace detail

// omega(p1, p2) = sum_ij p1_i u_ij p2_j.
inline double expected_payoff_static(const MixedStrategy& p1, const MixedStrategy& p2,
                                     const MatrixGame& g) {
  detail::require_rows(g, p1);
  detail::require_cols(g, p2);
  double total = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < g.cols(); ++j) row += g(i, j) * p2[j];
    total += p1[i] * row;
  }
  return total;
}

struct UHat {
  double value;
  std::vector<std::size_t> argmax_rows;  // 0-based, ascending
};

// Follower's best static payoff against commitment p2. The max over the
// simplex sits at a vertex, so enumerating rows is exact.
inline UHat u_hat(const MixedStrategy& p2, const MatrixGame& g) {
  detail::require_cols(g, p2);
  const auto rows = detail::row_payoffs(g, p2);
  const double best = *std::max_element(rows.begin(), rows.end());
  UHat out{best, {}};
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i] >= best - kPayoffTieTol) out.argmax_rows.push_back(i);
  return out;
}

struct PureMinMax {
  std::size_t col;
  double value;
};

// min_j max_i u_ij, lowest minimizing column.
inline PureMinMax pure_minmax(const MatrixGame& g) {
  PureMinMax best{0, std::numeric_limits<double>::infinity()};
  for (std::size_t j = 0; j < g.cols(); ++j) {
    double col_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.rows(); ++i) col_max = std::max(col_max, g(i, j));
    if (col_max < best.value) best = {j, col_max};
  }
  return best;
}

struct PureMaxMin {
  std::size_t row;
  double value;
};

// max_i min_j u_ij, lowest maximizing row.
inline PureMaxMin pure_maxmin(const MatrixGame& g) {
  PureMaxMin best{0, -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < g.rows(); ++i) {
    double row_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < g.cols(); ++j) row_min = std::min(row_min, g(i, j));
    if (row_min > best.value) best = {i, row_min};
  }
  return best;
}

struct NashSolution {
  MixedStrategy p1_star;  // follower
  MixedStrategy p2_star;  // leader
  double value;
};

namespace detail {

// Dense tableau simplex for  max 1'y  s.t.  A y <= 1, y >= 0  with A > 0
// entrywise. Bland's rule (lowest index enters, lowest basic index leaves
// on ratio ties) guarantees termination on degenerate games. Returns the
// primal y and the duals x of the row constraints.
inline std::pair<std::vector<double>, std::vector<double>> solve_packing_lp(
    const std::vector<double>& a, std::size_t m, std::size_t n) {
  constexpr double kEps = 1e-13;
  const std::size_t width = n + m + 1;  // y, slacks, rhs
  std::vector<double> t((m + 1) * width, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return t[r * width + c]; };
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) at(r, c) = a[r * n + c];
    at(r, n + r) = 1.0;
    at(r, width - 1) = 1.0;
    basis[r] = n + r;
  }
  for (std::size_t c = 0; c < n; ++c) at(m, c) = -1.0;

  for (std::size_t iter = 0; iter < 100000; ++iter) {
    std::size_t enter = width;
    for (std::size_t c = 0; c + 1 < width; ++c) {
      if (at(m, c) < -kEps) {
        enter = c;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      if (at(r, enter) > kEps) {
        const double ratio = at(r, width - 1) / at(r, enter);
        if (ratio < best_ratio - kEps ||
            (std::abs(ratio - best_ratio) <= kEps && leave < m && basis[r] < basis[leave])) {
          best_ratio = ratio;
          leave = r;
        }
      }
    }
    if (leave == m) throw std::runtime_error("matrix game LP unbounded");
    const double pivot = at(leave, enter);
    for (std::size_t c = 0; c < width; ++c) at(leave, c) /= pivot;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double factor = at(r, enter);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) at(r, c) -= factor * at(leave, c);
    }
    basis[leave] = enter;
  }

  std::vector<double> y(n, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) y[basis[r]] = at(r, width - 1);
  std::vector<double> x(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) x[r] = at(m, n + r);
  return {std::move(y), std::move(x)};
}

}  // namespace detail

// Mixed Nash equilibrium of the zero-sum matrix game. Pure saddles and the
// 2x2 indifference case are solved in closed form; everything else goes
// through the standard packing LP and its dual. Degenerate games may have
// several equilibria; the LP's lowest-index pivoting picks one of them.
inline NashSolution solve_matrix_nash(const MatrixGame& g) {
  const auto maxmin = pure_maxmin(g);
  const auto minmax = pure_minmax(g);
  if (maxmin.value == minmax.value) {
    return {MixedStrategy::pure(g.rows(), maxmin.row), MixedStrategy::pure(g.cols(), minmax.col),
            minmax.value};
  }
  if (g.rows() == 2 && g.cols() == 2) {
    const double d = g(0, 0) - g(0, 1) - g(1, 0) + g(1, 1);
    // No pure saddle in a 2x2 game forces d != 0 and interior solutions.
    auto p1 = MixedStrategy::binary((g(1, 1) - g(1, 0)) / d);
    auto p2 = MixedStrategy::binary((g(1, 1) - g(0, 1)) / d);
    const double value = expected_payoff_static(p1, p2, g);
    return {std::move(p1), std::move(p2), value};
  }

  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) lo = std::min(lo, g(i, j));
  const double shift = 1.0 - lo;
  std::vector<double> a(g.rows() * g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) a[i * g.cols() + j] = g(i, j) + shift;

  auto [y, x] = detail::solve_packing_lp(a, g.rows(), g.cols());
  auto p1 = MixedStrategy::normalized(std::move(x));
  auto p2 = MixedStrategy::normalized(std::move(y));
  const double value = expected_payoff_static(p1, p2, g);
  return {std::move(p1), std::move(p2), value};
}

}  // namespace ncg

#endif  // NCG_GAME_HPP_
