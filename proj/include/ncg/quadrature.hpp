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

#ifndef NCG_QUADRATURE_HPP_
#define NCG_QUADRATURE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ncg::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
  bool converged = true;
};

namespace detail {

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// One Gauss-Kronrod 7/15 panel with |K15 - G7| as the error estimate. Node
// layout follows Boost: abscissae ascend from 0 and the even-indexed ones are
// the Gauss nodes.
template <class F>
Panel gk15(const F& f, double a, double b) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using Gauss = boost::math::quadrature::gauss<double, 7>;
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k15 = wk[0] * fc;
  double g7 = wg[0] * fc;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double sum = f(c - h * x[i]) + f(c + h * x[i]);
    k15 += wk[i] * sum;
    if (i % 2 == 0) g7 += wg[i / 2] * sum;
  }
  return {a, b, k15 * h, std::abs((k15 - g7) * h)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod 7/15 on [a,b]. `breaks` (any order, values
// outside (a,b) ignored) seed the initial panels; put integrand kinks there
// and bracket narrow peaks on both sides, since panel endpoints are never
// sampled. Bisects the worst panel until the summed error
// estimate drops below abs_tol or max_panels is reached.
template <class F>
Result integrate(const F& f, double a, double b, std::span<const double> breaks = {},
                 double abs_tol = 1e-10, std::size_t max_panels = 20000) {
  Result out;
  if (!(b > a)) return out;
  std::vector<double> cuts{a, b};
  for (double x : breaks)
    if (x > a && x < b) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<detail::Panel> heap;
  double value = 0.0, error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto p = detail::gk15(f, cuts[i], cuts[i + 1]);
    value += p.value;
    error += p.error;
    heap.push(p);
  }
  while (error > abs_tol && heap.size() < max_panels) {
    const auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // panel at machine resolution
    heap.pop();
    const auto left = detail::gk15(f, worst.a, mid);
    const auto right = detail::gk15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to drop the drift of the running totals.
  value = 0.0;
  error = 0.0;
  out.panels = heap.size();
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.error = error;
  out.converged = error <= abs_tol;
  return out;
}

}  // namespace ncg::quad

#endif  // NCG_QUADRATURE_HPP_
