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

#ifndef NCG_IO_HPP_
#define NCG_IO_HPP_

#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "ncg/best_response.hpp"
#include "ncg/equilibrium.hpp"
#include "ncg/game.hpp"
#include "ncg/simulate.hpp"

namespace ncg {

inline nlohmann::json to_json(const MixedStrategy& p) {
  return nlohmann::json(std::vector<double>(p.probs().begin(), p.probs().end()));
}

inline nlohmann::json to_json(const DecisionRule& r) {
  return {{"breakpoints", r.breakpoints}, {"labels", r.labels}};
}

inline nlohmann::json to_json(const NashSolution& s) {
  return {{"p1_star", to_json(s.p1_star)}, {"p2_star", to_json(s.p2_star)}, {"value", s.value}};
}

inline nlohmann::json to_json(const EquilibriumReport& r) {
  return {{"commitment", to_json(r.commitment)},
          {"rule", to_json(r.rule)},
          {"value", r.value},
          {"nash_value", r.nash_value},
          {"pure_minmax_value", r.pure_minmax_value},
          {"sandwich_slacks", {r.sandwich_slacks.first, r.sandwich_slacks.second}},
          {"best_effort", r.best_effort},
          {"possibly_non_unique", r.possibly_non_unique}};
}

inline nlohmann::json to_json(const SimulationResult& r) {
  return {{"mean", r.mean}, {"stderr", r.std_error}, {"samples", r.samples}, {"seed", r.seed}};
}

inline nlohmann::json to_json(const RegularityReport& r) {
  nlohmann::json pairs = nlohmann::json::array();
  for (auto [i, l] : r.violating_pairs) pairs.push_back({i, l});
  nlohmann::json out = {{"nonzero_differences", r.nonzero_differences},
                        {"violating_pairs", pairs},
                        {"product_condition", r.product_condition}};
  out["tie_set_measure"] = r.tie_set_measure ? nlohmann::json(*r.tie_set_measure) : nlohmann::json(nullptr);
  return out;
}

inline nlohmann::json to_json(const SandwichReport& s) {
  return {{"lower_ok", s.lower_ok},
          {"middle_ok", s.middle_ok},
          {"upper_ok", s.upper_ok},
          {"commitment_bound_ok", s.commitment_bound_ok},
          {"nash_value", s.nash_value},
          {"v_dagger", s.v_dagger},
          {"v_hat", s.v_hat_p2},
          {"pure_minmax", s.pure_minmax}};
}

// %.17g: enough digits to round-trip every double.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "sigma2,q,v_hat,u_hat\n";
  for (const auto& r : rows) {
    out += format_double(r.sigma2);
    out += ',';
    out += format_double(r.q);
    out += ',';
    out += format_double(r.v_hat);
    out += ',';
    out += format_double(r.u_hat);
    out += '\n';
  }
  return out;
}

}  // namespace ncg

#endif  // NCG_IO_HPP_
