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

#ifndef NCG_OPTIMIZE_HPP_
#define NCG_OPTIMIZE_HPP_

#include <cmath>
#include <utility>

namespace ncg::opt {

struct Minimum {
  double x;
  double fx;
};

// Golden-section search on [a, b] until the bracket is narrower than tol.
// Returns the best point evaluated, endpoints included, so a minimum sitting
// on the boundary is found exactly.
template <class F>
Minimum golden_section(const F& f, double a, double b, double tol, int max_iter = 400) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  Minimum best{a, f(a)};
  auto consider = [&](double x, double fx) {
    if (fx < best.fx) best = {x, fx};
  };
  consider(b, f(b));
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  consider(c, fc);
  consider(d, fd);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
  return best;
}

}  // namespace ncg::opt

#endif  // NCG_OPTIMIZE_HPP_
