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

// Leader-side quantities of the noisy-commitment game.
//
//   v(rule, p2)  expected payoff when the follower applies `rule`
//   v_hat(p2)    follower-optimized payoff against commitment p2, i.e.
//                the integral over x of max_i sum_j u_ij p2_j f_j(x)
//   v_dagger     min over the simplex of v_hat
//
// v_hat has two independent routes for the two-action Gaussian case: the
// Q-function closed form around the likelihood-ratio threshold, and direct
// quadrature of the max-score integrand.

#ifndef NCG_EQUILIBRIUM_HPP_
#define NCG_EQUILIBRIUM_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ncg/best_response.hpp"
#include "ncg/channel.hpp"
#include "ncg/game.hpp"
#include "ncg/optimize.hpp"
#include "ncg/parallel.hpp"
#include "ncg/quadrature.hpp"
#include "ncg/random.hpp"

namespace ncg {

inline constexpr double kRegionQuadTol = 1e-9;
inline constexpr double kVHatQuadTol = 1e-10;

// Standard Gaussian upper tail.
inline double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

// P(lo < X < hi) for X ~ N(mean, sigma^2), evaluated on whichever tail keeps
// the subtraction well conditioned.
inline double gaussian_interval_probability(double mean, double sigma, Interval r) {
  const double za = (r.lo - mean) / sigma;
  const double zb = (r.hi - mean) / sigma;
  if (za >= 0.0) return q_function(za) - q_function(zb);
  if (zb <= 0.0) return q_function(-zb) - q_function(-za);
  return 1.0 - q_function(-za) - q_function(zb);
}

namespace detail {

// P_j(region) for the channel; quadrature unless the channel is Gaussian.
template <ChannelModel C>
double region_mass(const C& ch, std::size_t j, Interval r) {
  if constexpr (std::is_same_v<C, GaussianChannel>) {
    return gaussian_interval_probability(ch.mean(j), ch.sigma(j), r);
  } else {
    const auto w = ch.support_window(kDefaultWindowSigmas);
    const Interval clipped{std::max(r.lo, w.lo), std::min(r.hi, w.hi)};
    if (!(clipped.hi > clipped.lo)) return 0.0;
    const auto hints = quadrature_hints(ch);
    return quad::integrate([&](double x) { return std::exp(ch.log_density(j, x)); }, clipped.lo, clipped.hi,
                           hints, kRegionQuadTol)
        .value;
  }
}

}  // namespace detail

// v(rule, p2) = sum_j p2_j sum_regions u_{label, j} P_j(region).
template <ChannelModel C>
double expected_payoff_noisy(const MatrixGame& g, const C& ch, const DecisionRule& rule, const MixedStrategy& p2) {
  detail::check_dims(g, ch, p2);
  rule.validate(g.rows());
  double total = 0.0;
  for (std::size_t j = 0; j < g.cols(); ++j) {
    if (p2[j] <= 0.0) continue;
    double col = 0.0;
    if (rule.region_count() == 1) {
      col = g(rule.labels.front(), j);
    } else {
      for (std::size_t k = 0; k < rule.region_count(); ++k)
        col += g(rule.labels[k], j) * detail::region_mass(ch, j, rule.region(k));
    }
    total += p2[j] * col;
  }
  return total;
}

// v_hat(p2) by adaptive quadrature of x -> max_i sum_j u_ij p2_j f_j(x) over
// the channel's support window. Panels are split at the grid-scanned region
// boundaries, which keeps this path independent of any closed-form threshold.
template <ChannelModel C>
double v_hat_quadrature(const MatrixGame& g, const C& ch, const MixedStrategy& p2) {
  detail::check_dims(g, ch, p2);
  auto breaks = quadrature_hints(ch);
  const auto rule = canonical_rule(g, ch, p2, RegionMethod::kGrid);
  breaks.insert(breaks.end(), rule.breakpoints.begin(), rule.breakpoints.end());
  const auto w = ch.support_window(kDefaultWindowSigmas);
  std::vector<double> scores(g.rows());
  auto integrand = [&](double x) {
    std::fill(scores.begin(), scores.end(), 0.0);
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (p2[j] <= 0.0) continue;
      const double w_j = p2[j] * std::exp(ch.log_density(j, x));
      for (std::size_t i = 0; i < g.rows(); ++i) scores[i] += g(i, j) * w_j;
    }
    return *std::max_element(scores.begin(), scores.end());
  };
  return quad::integrate(integrand, w.lo, w.hi, breaks, kVHatQuadTol).value;
}

// Closed-form v_hat for two follower and two leader actions under an
// equal-variance Gaussian channel:
//
//   v_hat = sum_j p2_j (u_2j + (u_1j - u_2j) P_j(row 1 region)),
//
// with row 1's region a half-line bounded by the likelihood-ratio threshold
// b*. Which half-line is read from the scores. Outside its preconditions this
// falls back to quadrature and, if `diagnostic` is given, says why.
template <ChannelModel C>
double v_hat_gaussian(const MatrixGame& g, const C& ch, const MixedStrategy& p2, std::string* diagnostic = nullptr) {
  detail::check_dims(g, ch, p2);
  auto fallback = [&](const char* why) {
    if (diagnostic) *diagnostic = why;
    return v_hat_quadrature(g, ch, p2);
  };
  if constexpr (!std::is_same_v<C, GaussianChannel>) {
    return fallback("closed form needs a Gaussian channel");
  } else {
    if (g.rows() != 2 || g.cols() != 2) return fallback("closed form needs a 2x2 game");
    if (!ch.equal_variance()) return fallback("closed form needs equal variances");
    const auto t = detail::gaussian_pair_threshold(g, ch, p2, 0, 1);
    if (!t) return fallback("no single likelihood-ratio threshold for this commitment");
    if (diagnostic) diagnostic->clear();
    const double s = ch.sigma(0);
    const bool row0_below = canonical_action(g, ch, p2, *t - s) == 0;
    double total = 0.0;
    for (std::size_t j = 0; j < 2; ++j) {
      const double z = (*t - ch.mean(j)) / s;
      const double p_row0 = row0_below ? q_function(-z) : q_function(z);
      total += p2[j] * (g(1, j) + (g(0, j) - g(1, j)) * p_row0);
    }
    return total;
  }
}

// v_hat(p2) on the fastest exact route: the closed form where it applies,
// else the canonical rule's expected payoff.
template <ChannelModel C>
double v_hat(const MatrixGame& g, const C& ch, const MixedStrategy& p2) {
  if constexpr (std::is_same_v<C, GaussianChannel>) {
    if (g.rows() == 2 && g.cols() == 2 && ch.equal_variance() && detail::gaussian_pair_threshold(g, ch, p2, 0, 1))
      return v_hat_gaussian(g, ch, p2);
  }
  return expected_payoff_noisy(g, ch, canonical_rule(g, ch, p2), p2);
}

struct CommitmentOptions {
  std::size_t grid_points = 512;    // two leader actions: uniform scan of q
  double q_tolerance = 1e-10;       // golden-section bracket width
  std::size_t starts = 4;           // more leader actions: random interior starts
  std::uint64_t seed = 0;
  std::size_t threads = 0;          // 0 = default_thread_count()
  double uniqueness_tolerance = 1e-6;
};

struct Commitment {
  MixedStrategy p2;
  double value;
  bool best_effort = false;          // no global guarantee (more than two leader actions)
  bool possibly_non_unique = false;  // two separated grid minima within tolerance of the best
};

namespace detail {

template <ChannelModel C>
Commitment optimize_two_actions(const MatrixGame& g, const C& ch, const CommitmentOptions& opts) {
  const std::size_t n = std::max<std::size_t>(opts.grid_points, 2);
  std::vector<double> qs(n), vs(n);
  for (std::size_t k = 0; k < n; ++k) qs[k] = static_cast<double>(k) / static_cast<double>(n - 1);
  parallel_for(n, [&](std::size_t k) { vs[k] = v_hat(g, ch, MixedStrategy::binary(qs[k])); }, opts.threads);

  const std::size_t k = static_cast<std::size_t>(std::min_element(vs.begin(), vs.end()) - vs.begin());
  const double global = vs[k];

  // Count separated local minima near the global value; a plateau is one.
  std::size_t near_minima = 0;
  for (std::size_t a = 0; a < n;) {
    std::size_t b = a;
    while (b + 1 < n && vs[b + 1] == vs[a]) ++b;
    const bool left_ok = a == 0 || vs[a - 1] > vs[a];
    const bool right_ok = b + 1 == n || vs[b + 1] > vs[a];
    if (left_ok && right_ok && vs[a] <= global + opts.uniqueness_tolerance) ++near_minima;
    a = b + 1;
  }

  const double lo = qs[k == 0 ? 0 : k - 1];
  const double hi = qs[std::min(k + 1, n - 1)];
  const auto refined = opt::golden_section(
      [&](double q) { return v_hat(g, ch, MixedStrategy::binary(q)); }, lo, hi, opts.q_tolerance);
  Commitment out{MixedStrategy::binary(qs[k]), global};
  if (refined.fx < global) out = {MixedStrategy::binary(refined.x), refined.fx};
  out.possibly_non_unique = near_minima > 1;
  return out;
}

// Moves mass t from action a to action b.
inline std::vector<double> transfer(std::span<const double> p, std::size_t a, std::size_t b, double t) {
  std::vector<double> out(p.begin(), p.end());
  out[a] = std::max(0.0, out[a] - t);
  out[b] = std::max(0.0, out[b] + t);
  return out;
}

// Pairwise mass-transfer coordinate descent on the simplex from one start.
template <ChannelModel C>
Commitment descend(const MatrixGame& g, const C& ch, MixedStrategy start, double tol) {
  auto f = [&](const std::vector<double>& p) { return v_hat(g, ch, MixedStrategy::normalized(p)); };
  std::vector<double> p(start.probs().begin(), start.probs().end());
  double fp = f(p);
  for (int sweep = 0; sweep < 50; ++sweep) {
    const double before = fp;
    for (std::size_t a = 0; a < p.size(); ++a) {
      for (std::size_t b = a + 1; b < p.size(); ++b) {
        const double lo = -p[b], hi = p[a];
        if (!(hi - lo > tol)) continue;
        auto line = [&](double t) { return f(transfer(p, a, b, t)); };
        // Coarse scan first: v_hat is only piecewise smooth along the line.
        constexpr int kScan = 8;
        double best_t = 0.0, best_f = fp;
        for (int s = 0; s <= kScan; ++s) {
          const double t = lo + (hi - lo) * s / kScan;
          const double ft = line(t);
          if (ft < best_f) best_t = t, best_f = ft;
        }
        const double step = (hi - lo) / kScan;
        const auto m = opt::golden_section(line, std::max(lo, best_t - step), std::min(hi, best_t + step), tol);
        if (m.fx < best_f) best_t = m.x, best_f = m.fx;
        if (best_f < fp) {
          p = transfer(p, a, b, best_t);
          fp = best_f;
        }
      }
    }
    if (before - fp <= 1e-12) break;
  }
  return {MixedStrategy::normalized(p), fp};
}

}  // namespace detail

// Minimizer of v_hat over the leader's simplex. Two leader actions: dense
// grid over q followed by golden-section refinement of the best cell.
// Otherwise: coordinate descent from every vertex and `starts` random
// interior points, reported as best effort.
template <ChannelModel C>
Commitment optimal_commitment(const MatrixGame& g, const C& ch, const CommitmentOptions& opts = {}) {
  if (ch.input_count() != g.cols()) throw std::invalid_argument("channel input count != leader action count");
  if (g.cols() == 2) return detail::optimize_two_actions(g, ch, opts);

  std::vector<MixedStrategy> starts;
  for (std::size_t j = 0; j < g.cols(); ++j) starts.push_back(MixedStrategy::pure(g.cols(), j));
  starts.push_back(MixedStrategy::uniform(g.cols()));
  Rng rng(derive_seed(opts.seed, 0));
  for (std::size_t s = 0; s < opts.starts; ++s) {
    std::vector<double> w(g.cols());
    for (double& x : w) x = -std::log(1.0 - uniform01(rng));  // flat Dirichlet
    starts.push_back(MixedStrategy::normalized(std::move(w)));
  }
  std::vector<std::optional<Commitment>> results(starts.size());
  parallel_for(
      starts.size(), [&](std::size_t k) { results[k] = detail::descend(g, ch, starts[k], 1e-8); }, opts.threads);

  Commitment best = *results.front();
  std::size_t near = 0;
  for (const auto& r : results)
    if (r->value < best.value) best = *r;
  for (const auto& r : results) {
    double dist = 0.0;
    for (std::size_t j = 0; j < g.cols(); ++j) dist = std::max(dist, std::abs(r->p2[j] - best.p2[j]));
    if (r->value <= best.value + opts.uniqueness_tolerance && dist > 1e-3) ++near;
  }
  best.best_effort = true;
  best.possibly_non_unique = near > 0;
  return best;
}

struct EquilibriumReport {
  MixedStrategy commitment;
  DecisionRule rule;
  double value;              // v(rule, commitment)
  double nash_value;         // u_hat at the matrix-game equilibrium commitment
  double pure_minmax_value;  // min_j max_i u_ij
  std::pair<double, double> sandwich_slacks;  // (value - nash_value, pure_minmax_value - value)
  bool best_effort = false;
  bool possibly_non_unique = false;
};

template <ChannelModel C>
EquilibriumReport solve_equilibrium(const MatrixGame& g, const C& ch, const CommitmentOptions& opts = {}) {
  const auto c = optimal_commitment(g, ch, opts);
  auto rule = canonical_rule(g, ch, c.p2);
  const double value = expected_payoff_noisy(g, ch, rule, c.p2);
  const auto nash = solve_matrix_nash(g);
  const double nash_value = u_hat(nash.p2_star, g).value;
  const double minmax = pure_minmax(g).value;
  return {c.p2, std::move(rule), value, nash_value, minmax, {value - nash_value, minmax - value},
          c.best_effort, c.possibly_non_unique};
}

inline constexpr double kSandwichTol = 1e-8;

// The ordering u_hat(P*) <= v_dagger <= v_hat(p2), together with
// v_dagger <= min_j max_i u_ij. `commitment_bound_ok` additionally records
// whether v_hat(p2) itself stays below the pure min-max value; that holds at
// the optimum and at the min-max vertex but not for arbitrary p2, so it is
// reported rather than required.
struct SandwichReport {
  bool lower_ok;
  bool middle_ok;
  bool upper_ok;
  bool commitment_bound_ok;
  double nash_value;
  double v_dagger;
  double v_hat_p2;
  double pure_minmax;

  bool ok() const { return lower_ok && middle_ok && upper_ok; }
};

template <ChannelModel C>
SandwichReport sandwich_check(const MatrixGame& g, const C& ch, const MixedStrategy& p2, double v_dagger) {
  const double nash_value = u_hat(solve_matrix_nash(g).p2_star, g).value;
  const double at_p2 = v_hat(g, ch, p2);
  const double minmax = pure_minmax(g).value;
  return {nash_value <= v_dagger + kSandwichTol,
          v_dagger <= at_p2 + kSandwichTol,
          v_dagger <= minmax + kSandwichTol,
          at_p2 <= minmax + kSandwichTol,
          nash_value,
          v_dagger,
          at_p2,
          minmax};
}

template <ChannelModel C>
SandwichReport sandwich_check(const MatrixGame& g, const C& ch, const MixedStrategy& p2,
                              const CommitmentOptions& opts = {}) {
  return sandwich_check(g, ch, p2, optimal_commitment(g, ch, opts).value);
}

struct SweepRow {
  double sigma2;
  double q;
  double v_hat;
  double u_hat;
};

// v_hat and u_hat over commitments (q, 1-q) for each noise level.
// make_channel(sigma) builds the channel for one standard deviation. Rows
// come out ordered by (sigma^2, q).
template <class MakeChannel>
std::vector<SweepRow> sweep(const MatrixGame& g, const MakeChannel& make_channel, std::vector<double> q_grid,
                            std::vector<double> sigmas, std::size_t threads = 0) {
  if (g.cols() != 2) throw std::invalid_argument("sweep: needs exactly two leader actions");
  std::sort(sigmas.begin(), sigmas.end());
  std::sort(q_grid.begin(), q_grid.end());
  for (double q : q_grid)
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("sweep: q outside [0,1]");
  std::vector<SweepRow> rows(sigmas.size() * q_grid.size());
  parallel_for(
      rows.size(),
      [&](std::size_t k) {
        const double s = sigmas[k / q_grid.size()];
        const double q = q_grid[k % q_grid.size()];
        const auto ch = make_channel(s);
        const auto p2 = MixedStrategy::binary(q);
        rows[k] = {s * s, q, v_hat(g, ch, p2), u_hat(p2, g).value};
      },
      threads);
  return rows;
}

}  // namespace ncg

#endif  // NCG_EQUILIBRIUM_HPP_
