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

// Follower best responses to a commitment p2 after observing channel output x.
//
// Follower action i is scored by
//
//   g_i(x) = sum_j u_ij p2_j dP_j/dP_1(x),
//
// and the best responses at x are the maximizers of g. The canonical
// decision rule resolves ties toward the lowest row index, which partitions
// the real line into maximal labeled intervals.

#ifndef NCG_BEST_RESPONSE_HPP_
#define NCG_BEST_RESPONSE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "ncg/channel.hpp"
#include "ncg/game.hpp"

namespace ncg {

inline constexpr double kScoreTieTol = 1e-12;
inline constexpr std::size_t kRegionGridPoints = 4096;
inline constexpr double kBreakpointMergeSigmas = 1e-9;

// Follower scores at one channel output. Stored rescaled so that extreme
// likelihood ratios stay representable: g_i = scores[i] * exp(log_scale).
// Argmax sets and relative tie tests only need `scores`.
struct ScoreProfile {
  std::vector<double> scores;
  double log_scale = 0.0;

  double value(std::size_t i) const { return scores.at(i) * std::exp(log_scale); }
};

// Maximal labeled intervals covering the real line. Interval k is
// [breakpoints[k-1], breakpoints[k]) with the outer intervals unbounded.
struct DecisionRule {
  std::vector<double> breakpoints;
  std::vector<std::size_t> labels;

  static DecisionRule constant(std::size_t label) { return {{}, {label}}; }

  std::size_t label_at(double x) const {
    const auto k = std::upper_bound(breakpoints.begin(), breakpoints.end(), x) - breakpoints.begin();
    return labels[static_cast<std::size_t>(k)];
  }

  std::size_t region_count() const { return labels.size(); }

  // Bounds of region k, with infinities at the ends.
  Interval region(std::size_t k) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {k == 0 ? -inf : breakpoints[k - 1], k == breakpoints.size() ? inf : breakpoints[k]};
  }

  void validate(std::size_t follower_actions) const {
    if (labels.size() != breakpoints.size() + 1) throw std::invalid_argument("DecisionRule: label count mismatch");
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (labels[k] >= follower_actions) throw std::invalid_argument("DecisionRule: label out of range");
      if (k > 0 && labels[k] == labels[k - 1]) throw std::invalid_argument("DecisionRule: adjacent labels repeat");
    }
    for (std::size_t k = 1; k < breakpoints.size(); ++k)
      if (!(breakpoints[k] > breakpoints[k - 1])) throw std::invalid_argument("DecisionRule: breakpoints not increasing");
  }
};

// Channel outputs where follower actions `pair` tie.
struct BoundarySet {
  std::vector<double> points;
  std::pair<std::size_t, std::size_t> pair;
  bool degenerate = false;  // regularity fails for the pair, or no clean crossing structure
  bool everywhere = false;  // the two scores coincide on the whole window
};

enum class RegionMethod {
  kAuto,  // closed form where available, grid scan otherwise
  kGrid,  // always grid scan + bisection
};

namespace detail {

template <ChannelModel C>
void check_dims(const MatrixGame& g, const C& ch, const MixedStrategy& p2) {
  if (ch.input_count() != g.cols()) throw std::invalid_argument("channel input count != leader action count");
  if (p2.size() != g.cols()) throw std::invalid_argument("leader strategy dimension mismatch");
}

// Columns with zero probability drop out of every score.
template <ChannelModel C>
ScoreProfile scaled_scores(const MatrixGame& g, const C& ch, const MixedStrategy& p2, double x) {
  const double ref = ch.log_density(0, x);
  double shift = -std::numeric_limits<double>::infinity();
  std::vector<double> log_ratio(g.cols(), 0.0);
  for (std::size_t j = 0; j < g.cols(); ++j) {
    if (p2[j] <= 0.0) continue;
    log_ratio[j] = ch.log_density(j, x) - ref;
    shift = std::max(shift, log_ratio[j]);
  }
  ScoreProfile out{std::vector<double>(g.rows(), 0.0), shift};
  for (std::size_t j = 0; j < g.cols(); ++j) {
    if (p2[j] <= 0.0) continue;
    const double w = p2[j] * std::exp(log_ratio[j] - shift);
    for (std::size_t i = 0; i < g.rows(); ++i) out.scores[i] += g(i, j) * w;
  }
  return out;
}

inline double tie_band(const std::vector<double>& s, double tie_tol) {
  double mag = 0.0;
  for (double v : s) mag = std::max(mag, std::abs(v));
  return tie_tol * (1.0 + mag);
}

inline std::size_t lowest_argmax(const std::vector<double>& s, double tie_tol) {
  const double best = *std::max_element(s.begin(), s.end());
  const double band = tie_band(s, tie_tol);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] >= best - band) return i;
  return 0;
}

inline std::vector<double> grid(Interval w, std::size_t n) {
  std::vector<double> xs(n);
  const double step = w.width() / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) xs[k] = w.lo + step * static_cast<double>(k);
  xs.back() = w.hi;
  return xs;
}

// Bisects [lo, hi] (pred(lo) true, pred(hi) false) down to adjacent doubles.
template <class Pred>
std::pair<double, double> bisect(double lo, double hi, const Pred& pred) {
  for (int it = 0; it < 2000; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    (pred(mid) ? lo : hi) = mid;
  }
  return {lo, hi};
}

// Sorted points; keeps the first of any run closer than tol.
inline std::vector<double> merge_close(std::vector<double> pts, double tol) {
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double p : pts)
    if (out.empty() || p - out.back() >= tol) out.push_back(p);
  return out;
}

// Equal-variance Gaussian with two leader actions, both played: the
// log-likelihood ratio is affine, so g_i = g_l has a closed-form root when
// (u_i1 - u_l1) p_1 and (u_l2 - u_i2) p_2 share a sign.
template <ChannelModel C>
std::optional<double> gaussian_pair_threshold(const MatrixGame& g, const C& ch, const MixedStrategy& p2,
                                              std::size_t i, std::size_t l) {
  if constexpr (std::is_same_v<C, GaussianChannel>) {
    if (g.cols() != 2 || !ch.equal_variance() || !(p2[0] > 0.0) || !(p2[1] > 0.0)) return std::nullopt;
    const double num = (g(i, 0) - g(l, 0)) * p2[0];
    const double den = (g(l, 1) - g(i, 1)) * p2[1];
    if (!(num / den > 0.0) || !std::isfinite(num / den)) return std::nullopt;
    const double s = ch.sigma(0);
    const double m0 = ch.mean(0), m1 = ch.mean(1);
    // log f_1/f_0 (x) = ((m1 - m0) x - (m1^2 - m0^2)/2) / s^2
    return s * s / (m1 - m0) * std::log(num / den) + 0.5 * (m0 + m1);
  } else {
    (void)g, (void)ch, (void)p2, (void)i, (void)l;
    return std::nullopt;
  }
}

}  // namespace detail

template <ChannelModel C>
ScoreProfile score_profile(const MatrixGame& g, const C& ch, const MixedStrategy& p2, double x) {
  detail::check_dims(g, ch, p2);
  return detail::scaled_scores(g, ch, p2, x);
}

// S(p2, x): every row within tie_tol * (1 + max|score|) of the best score.
template <ChannelModel C>
std::vector<std::size_t> best_action_set(const MatrixGame& g, const C& ch, const MixedStrategy& p2, double x,
                                         double tie_tol = kScoreTieTol) {
  if (tie_tol < 0.0) throw std::invalid_argument("best_action_set: negative tie tolerance");
  const auto prof = score_profile(g, ch, p2, x);
  const double best = *std::max_element(prof.scores.begin(), prof.scores.end());
  const double band = detail::tie_band(prof.scores, tie_tol);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < prof.scores.size(); ++i)
    if (prof.scores[i] >= best - band) out.push_back(i);
  return out;
}

// Lowest-index best response at x.
template <ChannelModel C>
std::size_t canonical_action(const MatrixGame& g, const C& ch, const MixedStrategy& p2, double x) {
  return detail::lowest_argmax(detail::scaled_scores(g, ch, p2, x).scores, kScoreTieTol);
}

// The partition of the output line into canonical best-response regions.
template <ChannelModel C>
DecisionRule canonical_rule(const MatrixGame& g, const C& ch, const MixedStrategy& p2,
                            RegionMethod method = RegionMethod::kAuto) {
  detail::check_dims(g, ch, p2);
  auto label = [&](double x) { return canonical_action(g, ch, p2, x); };

  if (method == RegionMethod::kAuto && g.rows() == 2) {
    if (auto t = detail::gaussian_pair_threshold(g, ch, p2, 0, 1)) {
      // Which side each row owns is read off the scores, not the payoff signs.
      const double s = ch.scale();
      const std::size_t left = label(*t - s), right = label(*t + s);
      if (left == right) return DecisionRule::constant(left);
      return {{*t}, {left, right}};
    }
  }

  const auto xs = detail::grid(ch.support_window(kDefaultWindowSigmas), kRegionGridPoints);
  std::vector<std::size_t> ls(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) ls[k] = label(xs[k]);

  DecisionRule rule{{}, {ls.front()}};
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    double a = xs[k];
    std::size_t la = ls[k];
    // A cell may hide several transitions; peel them off left to right.
    while (la != ls[k + 1]) {
      const auto [lo, hi] = detail::bisect(a, xs[k + 1], [&](double x) { return label(x) == la; });
      const std::size_t next = label(hi);
      rule.breakpoints.push_back(hi);
      rule.labels.push_back(next);
      a = hi;
      la = next;
      if (!(hi < xs[k + 1])) break;
    }
  }

  // Drop slivers narrower than the merge tolerance, then re-maximize.
  const double tol = kBreakpointMergeSigmas * ch.scale();
  DecisionRule merged{{}, {rule.labels.front()}};
  for (std::size_t k = 0; k < rule.breakpoints.size(); ++k) {
    const bool sliver = k + 1 < rule.breakpoints.size() && rule.breakpoints[k + 1] - rule.breakpoints[k] < tol;
    if (sliver) continue;
    if (rule.labels[k + 1] == merged.labels.back()) continue;
    merged.breakpoints.push_back(rule.breakpoints[k]);
    merged.labels.push_back(rule.labels[k + 1]);
  }
  return merged;
}

// H_{i,l}(p2): outputs where rows i and l score equally.
template <ChannelModel C>
BoundarySet boundary_points(const MatrixGame& g, const C& ch, const MixedStrategy& p2, std::size_t i,
                            std::size_t l, RegionMethod method = RegionMethod::kAuto) {
  detail::check_dims(g, ch, p2);
  if (i == l || i >= g.rows() || l >= g.rows()) throw std::invalid_argument("boundary_points: need distinct valid rows");
  BoundarySet out{{}, {i, l}};
  for (std::size_t j = 0; j < g.cols(); ++j)
    if ((g(i, j) - g(l, j)) * p2[j] == 0.0) out.degenerate = true;

  if (method == RegionMethod::kAuto) {
    if (auto t = detail::gaussian_pair_threshold(g, ch, p2, i, l)) {
      out.points = {*t};
      return out;
    }
    if constexpr (std::is_same_v<C, GaussianChannel>) {
      // Two-input equal-variance channel without a positive ratio: no clean
      // single crossing exists.
      if (g.cols() == 2 && ch.equal_variance()) out.degenerate = true;
    }
  }

  auto diff = [&](double x) {
    const auto s = detail::scaled_scores(g, ch, p2, x).scores;
    const double d = s[i] - s[l];
    return std::abs(d) <= detail::tie_band(s, kScoreTieTol) ? 0.0 : d;
  };
  const auto xs = detail::grid(ch.support_window(kDefaultWindowSigmas), kRegionGridPoints);
  std::vector<double> ds(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) ds[k] = diff(xs[k]);

  if (std::all_of(ds.begin(), ds.end(), [](double d) { return d == 0.0; })) {
    out.everywhere = true;
    out.degenerate = true;
    return out;
  }
  std::vector<double> pts;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (ds[k] == 0.0) {
      pts.push_back(xs[k]);
      continue;
    }
    if (k + 1 < xs.size() && ds[k + 1] != 0.0 && (ds[k] > 0.0) != (ds[k + 1] > 0.0)) {
      const bool left_positive = ds[k] > 0.0;
      const auto [lo, hi] =
          detail::bisect(xs[k], xs[k + 1], [&](double x) { return (diff(x) > 0.0) == left_positive && diff(x) != 0.0; });
      pts.push_back(std::abs(diff(lo)) <= std::abs(diff(hi)) ? lo : hi);
    }
  }
  out.points = detail::merge_close(std::move(pts), kBreakpointMergeSigmas * ch.scale());
  return out;
}

struct RegularityReport {
  // (u_ij - u_lj) p2_j != 0 for every j and every row pair.
  bool nonzero_differences = true;
  std::vector<std::pair<std::size_t, std::size_t>> violating_pairs;
  // prod_j (u_ij - u_lj) p2_j > 0 for every ordered pair i != l.
  bool product_condition = true;
  // Grid estimate of the largest Lebesgue measure of a tie set, when a
  // channel was supplied.
  std::optional<double> tie_set_measure;
};

inline RegularityReport check_regularity(const MatrixGame& g, const MixedStrategy& p2) {
  detail::require_cols(g, p2);
  RegularityReport r;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t l = 0; l < g.rows(); ++l) {
      if (i == l) continue;
      double prod = 1.0;
      bool zero = false;
      for (std::size_t j = 0; j < g.cols(); ++j) {
        const double term = (g(i, j) - g(l, j)) * p2[j];
        zero = zero || term == 0.0;
        prod *= term;
      }
      if (!(prod > 0.0)) r.product_condition = false;
      if (zero && i < l) {
        r.nonzero_differences = false;
        r.violating_pairs.emplace_back(i, l);
      }
    }
  }
  return r;
}

template <ChannelModel C>
RegularityReport check_regularity(const MatrixGame& g, const C& ch, const MixedStrategy& p2) {
  detail::check_dims(g, ch, p2);
  auto r = check_regularity(g, p2);
  const auto w = ch.support_window(kDefaultWindowSigmas);
  const auto xs = detail::grid(w, kRegionGridPoints);
  std::vector<std::size_t> ties(g.rows() * g.rows(), 0);
  for (double x : xs) {
    const auto s = detail::scaled_scores(g, ch, p2, x).scores;
    const double band = detail::tie_band(s, kScoreTieTol);
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t l = i + 1; l < g.rows(); ++l)
        if (std::abs(s[i] - s[l]) <= band) ++ties[i * g.rows() + l];
  }
  const std::size_t worst = *std::max_element(ties.begin(), ties.end());
  r.tie_set_measure = w.width() * static_cast<double>(worst) / static_cast<double>(xs.size());
  return r;
}

}  // namespace ncg

#endif  // NCG_BEST_RESPONSE_HPP_
