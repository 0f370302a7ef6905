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

// Monte Carlo play of the three-stage game: the leader draws a column from
// its commitment, the channel corrupts the column's embedding, the follower
// maps the observation through a decision rule.

#ifndef NCG_SIMULATE_HPP_
#define NCG_SIMULATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ncg/best_response.hpp"
#include "ncg/channel.hpp"
#include "ncg/game.hpp"
#include "ncg/parallel.hpp"
#include "ncg/random.hpp"

namespace ncg {

struct SimulationResult {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(samples); 0 for one sample
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

// One-pass mean/variance accumulator (Welford), mergeable with Chan's update.
class RunningStats {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }

  void merge(const RunningStats& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n_), nb = static_cast<double>(o.n_);
    const double d = o.mean_ - mean_;
    const double n = na + nb;
    mean_ += d * nb / n;
    m2_ += o.m2_ + d * d * na * nb / n;
    n_ += o.n_;
  }

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double sample_variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Inverse-CDF draw from a finite distribution.
inline std::size_t sample_index(const MixedStrategy& p, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] <= 0.0) continue;
    last = j;
    acc += p[j];
    if (u < acc) return j;
  }
  return last;
}

template <ChannelModel C>
double play_once(const MatrixGame& g, const C& ch, const DecisionRule& rule, const MixedStrategy& p2, Rng& rng) {
  const std::size_t col = sample_index(p2, rng);
  const double observed = ch.sample(col, rng);
  return g(rule.label_at(observed), col);
}

// Samples are split into `chunks` fixed blocks. Block k runs on its own
// engine seeded with derive_seed(seed, k) and the block statistics are merged
// in block order, so the result is identical for any number of threads.
inline constexpr std::size_t kDefaultChunks = 64;

template <ChannelModel C>
SimulationResult estimate_value(const MatrixGame& g, const C& ch, const DecisionRule& rule, const MixedStrategy& p2,
                                std::size_t samples, std::uint64_t seed, std::size_t threads = 0,
                                std::size_t chunks = kDefaultChunks) {
  if (samples == 0) throw std::invalid_argument("estimate_value: samples must be >= 1");
  if (p2.size() != g.cols() || ch.input_count() != g.cols()) {
    throw std::invalid_argument("estimate_value: dimension mismatch");
  }
  rule.validate(g.rows());
  chunks = std::clamp<std::size_t>(chunks, 1, samples);
  std::vector<RunningStats> parts(chunks);
  parallel_for(
      chunks,
      [&](std::size_t k) {
        const std::size_t n = samples / chunks + (k < samples % chunks ? 1 : 0);
        Rng rng(derive_seed(seed, k));
        for (std::size_t s = 0; s < n; ++s) parts[k].add(play_once(g, ch, rule, p2, rng));
      },
      threads);
  RunningStats all;
  for (const auto& p : parts) all.merge(p);
  const double sd = std::sqrt(all.sample_variance());
  return {all.mean(), sd / std::sqrt(static_cast<double>(samples)), samples, seed};
}

}  // namespace ncg

#endif  // NCG_SIMULATE_HPP_
