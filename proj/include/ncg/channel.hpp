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

// Observation channels: for each leader action j a density f_j on the real
// line. Everything is evaluated in log space; with well-separated inputs and
// small noise the raw densities underflow long before their ratios do.

#ifndef NCG_CHANNEL_HPP_
#define NCG_CHANNEL_HPP_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ncg/game.hpp"
#include "ncg/random.hpp"

namespace ncg {

struct Interval {
  double lo;
  double hi;
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

inline constexpr double kDefaultWindowSigmas = 10.0;

// Requirements on an observation channel.
//   log_density(j, x)   natural log of f_j(x); finite everywhere
//   sample(j, rng)      one draw from f_j
//   support_window(k)   interval outside of which every f_j has tail mass
//                       of order exp(-k^2/2) or less
//   scale()             characteristic noise width, used for merge tolerances
template <class C>
concept ChannelModel = requires(const C& c, std::size_t j, double x, Rng& rng) {
  { c.input_count() } -> std::convertible_to<std::size_t>;
  { c.log_density(j, x) } -> std::convertible_to<double>;
  { c.sample(j, rng) } -> std::convertible_to<double>;
  { c.support_window(x) } -> std::same_as<Interval>;
  { c.scale() } -> std::convertible_to<double>;
};

// Optional: points where the integrand mass concentrates. Quadrature seeds
// its initial panels with them so narrow peaks are never stepped over.
template <class C>
concept HasQuadratureHints = requires(const C& c) {
  { c.quadrature_hints() } -> std::convertible_to<std::vector<double>>;
};

// Additive Gaussian noise: output given input j is N(mean_j, sigma_j^2).
class GaussianChannel {
 public:
  GaussianChannel(double sigma, const std::vector<double>& means)
      : GaussianChannel(std::vector<double>(means.size(), sigma), means) {}

  GaussianChannel(std::vector<double> sigmas, std::vector<double> means)
      : sigmas_(std::move(sigmas)), means_(std::move(means)) {
    if (means_.size() < 2) throw std::invalid_argument("GaussianChannel: need at least 2 inputs");
    if (sigmas_.size() != means_.size()) {
      throw std::invalid_argument("GaussianChannel: sigmas and means differ in length");
    }
    for (double s : sigmas_) {
      if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("GaussianChannel: sigma must be > 0");
    }
    for (std::size_t a = 0; a < means_.size(); ++a) {
      if (!std::isfinite(means_[a])) throw std::invalid_argument("GaussianChannel: non-finite mean");
      for (std::size_t b = 0; b < a; ++b)
        if (means_[a] == means_[b]) throw std::invalid_argument("GaussianChannel: means must be distinct");
    }
  }

  // Means are mu_j + a_{2,j}; mu defaults to zero.
  static GaussianChannel for_game(const MatrixGame& g, double sigma, std::vector<double> mu = {}) {
    if (mu.empty()) mu.assign(g.cols(), 0.0);
    if (mu.size() != g.cols()) throw std::invalid_argument("GaussianChannel: mu length must equal column count");
    auto emb = g.leader_embeddings();
    for (std::size_t j = 0; j < mu.size(); ++j) mu[j] += emb[j];
    return GaussianChannel(sigma, std::move(mu));
  }

  GaussianChannel with_sigma(double sigma) const { return GaussianChannel(sigma, means_); }

  std::size_t input_count() const { return means_.size(); }
  double mean(std::size_t j) const { return means_.at(j); }
  double sigma(std::size_t j) const { return sigmas_.at(j); }
  const std::vector<double>& means() const { return means_; }

  bool equal_variance() const {
    return std::all_of(sigmas_.begin(), sigmas_.end(), [&](double s) { return s == sigmas_.front(); });
  }

  double log_density(std::size_t j, double x) const {
    check(j);
    const double z = (x - means_[j]) / sigmas_[j];
    return -std::log(sigmas_[j]) - 0.5 * std::log(2.0 * std::numbers::pi) - 0.5 * z * z;
  }

  double sample(std::size_t j, Rng& rng) const {
    check(j);
    return means_[j] + sigmas_[j] * standard_normal(rng);
  }

  Interval support_window(double k) const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t j = 0; j < means_.size(); ++j) {
      lo = std::min(lo, means_[j] - k * sigmas_[j]);
      hi = std::max(hi, means_[j] + k * sigmas_[j]);
    }
    return {lo, hi};
  }

  double scale() const { return *std::max_element(sigmas_.begin(), sigmas_.end()); }

  std::vector<double> quadrature_hints() const {
    std::vector<double> pts;
    for (std::size_t j = 0; j < means_.size(); ++j) {
      pts.push_back(means_[j]);
      for (double k : {1.0, 2.0, 4.0, 8.0}) {
        pts.push_back(means_[j] - k * sigmas_[j]);
        pts.push_back(means_[j] + k * sigmas_[j]);
      }
    }
    return pts;
  }

 private:
  void check(std::size_t j) const {
    if (j >= means_.size()) throw std::out_of_range("GaussianChannel: input index out of range");
  }

  std::vector<double> sigmas_;
  std::vector<double> means_;
};

// Arbitrary channel assembled from callables. The caller owns the window
// contract: support_window(k) must leave negligible mass outside for the
// quadrature tolerances in use (heavy tails need a generous window).
class DensityChannel {
 public:
  using LogDensity = std::function<double(std::size_t, double)>;
  using Sampler = std::function<double(std::size_t, Rng&)>;
  using Window = std::function<Interval(double)>;

  DensityChannel(std::size_t inputs, LogDensity log_density, Sampler sampler, Window window,
                 double scale, std::vector<double> hints = {})
      : inputs_(inputs),
        log_density_(std::move(log_density)),
        sampler_(std::move(sampler)),
        window_(std::move(window)),
        scale_(scale),
        hints_(std::move(hints)) {
    if (inputs_ < 2) throw std::invalid_argument("DensityChannel: need at least 2 inputs");
    if (!(scale_ > 0.0)) throw std::invalid_argument("DensityChannel: scale must be > 0");
  }

  std::size_t input_count() const { return inputs_; }
  double log_density(std::size_t j, double x) const {
    check(j);
    return log_density_(j, x);
  }
  double sample(std::size_t j, Rng& rng) const {
    check(j);
    return sampler_(j, rng);
  }
  Interval support_window(double k) const { return window_(k); }
  double scale() const { return scale_; }
  std::vector<double> quadrature_hints() const { return hints_; }

 private:
  void check(std::size_t j) const {
    if (j >= inputs_) throw std::out_of_range("DensityChannel: input index out of range");
  }

  std::size_t inputs_;
  LogDensity log_density_;
  Sampler sampler_;
  Window window_;
  double scale_;
  std::vector<double> hints_;
};

// Laplace (double exponential) noise with common scale b; a non-Gaussian
// channel with heavier-than-Gaussian tails.
inline DensityChannel laplace_channel(double b, std::vector<double> means) {
  if (!(b > 0.0)) throw std::invalid_argument("laplace_channel: scale must be > 0");
  const auto [lo_it, hi_it] = std::minmax_element(means.begin(), means.end());
  const double lo = *lo_it, hi = *hi_it;
  std::vector<double> hints;
  for (double m : means)
    for (double k : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) hints.push_back(m + k * b);
  const std::size_t n = means.size();
  return DensityChannel(
      n,
      [b, means](std::size_t j, double x) { return -std::log(2.0 * b) - std::abs(x - means[j]) / b; },
      [b, means](std::size_t j, Rng& rng) {
        const double u = uniform01(rng) - 0.5;
        return means[j] - b * std::copysign(1.0, u) * std::log1p(-2.0 * std::abs(u));
      },
      // Tail mass beyond t scales as exp(-t/b); k^2/2 scale lengths matches
      // the Gaussian-style contract exp(-k^2/2).
      [b, lo, hi](double k) { return Interval{lo - 0.5 * k * k * b, hi + 0.5 * k * k * b}; }, b,
      std::move(hints));
}

// ---------------------------------------------------------------------------
// Free-function operations.

template <ChannelModel C>
double log_density(const C& ch, std::size_t j, double x) {
  return ch.log_density(j, x);
}

template <ChannelModel C>
double log_rnd(const C& ch, std::size_t j, std::size_t ref, double x) {
  return ch.log_density(j, x) - ch.log_density(ref, x);
}

// Radon-Nikodym derivative dP_j/dP_ref at x.
template <ChannelModel C>
double rnd(const C& ch, std::size_t j, std::size_t ref, double x) {
  return std::exp(log_rnd(ch, j, ref, x));
}

template <ChannelModel C>
double rnd(const C& ch, std::size_t j, double x) {
  return rnd(ch, j, 0, x);
}

template <ChannelModel C>
double sample(const C& ch, std::size_t j, Rng& rng) {
  return ch.sample(j, rng);
}

struct NotImplemented : std::logic_error {
  using std::logic_error::logic_error;
};

// D(P_j || P_k). Closed form for Gaussian inputs; other channels signal
// NotImplemented.
template <ChannelModel C>
double kl_divergence(const C& ch, std::size_t j, std::size_t k) {
  if constexpr (std::is_same_v<C, GaussianChannel>) {
    const double sj = ch.sigma(j), sk = ch.sigma(k);
    const double d = ch.mean(j) - ch.mean(k);
    return std::log(sk / sj) + (sj * sj + d * d) / (2.0 * sk * sk) - 0.5;
  } else {
    (void)ch;
    (void)j;
    (void)k;
    throw NotImplemented("kl_divergence: only available for Gaussian channels");
  }
}

// Density of the output marginal: sum_j p2_j f_j(x).
template <ChannelModel C>
double marginal_density(const C& ch, const MixedStrategy& p2, double x) {
  if (p2.size() != ch.input_count()) throw std::invalid_argument("marginal_density: dimension mismatch");
  double total = 0.0;
  for (std::size_t j = 0; j < p2.size(); ++j)
    if (p2[j] > 0.0) total += p2[j] * std::exp(ch.log_density(j, x));
  return total;
}

template <ChannelModel C>
std::vector<double> quadrature_hints(const C& ch) {
  if constexpr (HasQuadratureHints<C>) {
    return ch.quadrature_hints();
  } else {
    return {};
  }
}

}  // namespace ncg

#endif  // NCG_CHANNEL_HPP_
