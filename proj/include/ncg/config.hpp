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

// Game configuration files:
//
//   {
//     "payoffs": [[8, -6], [-2, 2]],
//     "leader_actions": [-100, 100],
//     "channel": {"type": "gaussian", "sigma": 100, "mu": [0, 0]}
//   }
//
// Rows of `payoffs` are follower actions, columns leader actions. Channel
// means are mu[j] + leader_actions[j]; `mu` may be omitted.

#ifndef NCG_CONFIG_HPP_
#define NCG_CONFIG_HPP_

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ncg/channel.hpp"
#include "ncg/game.hpp"

namespace ncg {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GameConfig {
  MatrixGame game;
  double sigma;
  std::vector<double> mu;

  GaussianChannel channel() const { return GaussianChannel::for_game(game, sigma, mu); }
  GaussianChannel channel(double sigma_override) const { return GaussianChannel::for_game(game, sigma_override, mu); }
};

namespace detail {

inline double number_at(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(field + ": must be finite");
  return v;
}

inline std::vector<double> numbers_at(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError(field + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number_at(j[k], field + "[" + std::to_string(k) + "]"));
  return out;
}

}  // namespace detail

inline GameConfig parse_game_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("top level: expected an object");

  if (!doc.contains("payoffs")) throw ConfigError("payoffs: missing");
  const auto& pj = doc["payoffs"];
  if (!pj.is_array() || pj.size() < 2) throw ConfigError("payoffs: expected an array of at least 2 rows");
  std::vector<std::vector<double>> payoffs;
  for (std::size_t i = 0; i < pj.size(); ++i) {
    auto row = detail::numbers_at(pj[i], "payoffs[" + std::to_string(i) + "]");
    if (row.size() < 2) throw ConfigError("payoffs[" + std::to_string(i) + "]: need at least 2 columns");
    if (!payoffs.empty() && row.size() != payoffs.front().size()) {
      throw ConfigError("payoffs[" + std::to_string(i) + "]: row length differs from payoffs[0]");
    }
    payoffs.push_back(std::move(row));
  }
  const std::size_t m2 = payoffs.front().size();

  if (!doc.contains("leader_actions")) throw ConfigError("leader_actions: missing");
  auto actions = detail::numbers_at(doc["leader_actions"], "leader_actions");
  if (actions.size() != m2) throw ConfigError("leader_actions: length must equal the payoff column count");
  for (std::size_t j = 1; j < actions.size(); ++j)
    if (!(actions[j] > actions[j - 1])) throw ConfigError("leader_actions: must be strictly increasing");

  if (!doc.contains("channel")) throw ConfigError("channel: missing");
  const auto& cj = doc["channel"];
  if (!cj.is_object()) throw ConfigError("channel: expected an object");
  if (!cj.contains("type") || !cj["type"].is_string()) throw ConfigError("channel.type: expected a string");
  if (cj["type"].get<std::string>() != "gaussian") throw ConfigError("channel.type: only \"gaussian\" is supported");
  if (!cj.contains("sigma")) throw ConfigError("channel.sigma: missing");
  const double sigma = detail::number_at(cj["sigma"], "channel.sigma");
  if (!(sigma > 0.0)) throw ConfigError("channel.sigma: must be > 0");
  std::vector<double> mu(m2, 0.0);
  if (cj.contains("mu")) {
    mu = detail::numbers_at(cj["mu"], "channel.mu");
    if (mu.size() != m2) throw ConfigError("channel.mu: length must equal the payoff column count");
  }
  for (std::size_t a = 0; a < m2; ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (mu[a] + actions[a] == mu[b] + actions[b]) throw ConfigError("channel.mu: channel means must be distinct");

  return {MatrixGame(std::move(payoffs), std::move(actions)), sigma, std::move(mu)};
}

inline GameConfig load_game_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read game file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_game_config(buf.str());
}

}  // namespace ncg

#endif  // NCG_CONFIG_HPP_
