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

#include "ncg/config.hpp"

#include <gtest/gtest.h>

#include <string>

#include "ncg/io.hpp"

namespace ncg {
namespace {

// Expects a ConfigError whose message starts with `field`.
void expect_field_error(const std::string& text, const std::string& field) {
  try {
    parse_game_config(text);
    ADD_FAILURE() << "no error for: " << text;
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()).rfind(field, 0), 0u) << e.what();
  }
}

TEST(ParseGameConfigTest, ParsesFullConfig) {
  const auto cfg = parse_game_config(R"({
    "payoffs": [[8, -6], [-2, 2]],
    "leader_actions": [-100, 100],
    "channel": {"type": "gaussian", "sigma": 100, "mu": [1, 2]}
  })");
  EXPECT_EQ(cfg.game.rows(), 2u);
  EXPECT_EQ(cfg.game(0, 1), -6.0);
  EXPECT_EQ(cfg.sigma, 100.0);
  const auto ch = cfg.channel();
  EXPECT_EQ(ch.mean(0), -99.0);
  EXPECT_EQ(ch.mean(1), 102.0);
  EXPECT_EQ(cfg.channel(5.0).sigma(1), 5.0);
}

TEST(ParseGameConfigTest, MuDefaultsToZero) {
  const auto cfg = parse_game_config(
      R"({"payoffs": [[1, 0], [0, 1]], "leader_actions": [0, 1], "channel": {"type": "gaussian", "sigma": 2}})");
  EXPECT_EQ(cfg.mu, (std::vector<double>{0.0, 0.0}));
}

TEST(ParseGameConfigTest, FieldSpecificErrors) {
  const std::string ch = R"("channel": {"type": "gaussian", "sigma": 1})";
  expect_field_error("{not json", "malformed JSON");
  expect_field_error("[1, 2]", "top level");
  expect_field_error(R"({"leader_actions": [0, 1], )" + ch + "}", "payoffs");
  expect_field_error(R"({"payoffs": [[1, 2]], "leader_actions": [0, 1], )" + ch + "}", "payoffs");
  expect_field_error(R"({"payoffs": [[1, 2], [3]], "leader_actions": [0, 1], )" + ch + "}", "payoffs[1]");
  expect_field_error(R"({"payoffs": [[1, "x"], [3, 4]], "leader_actions": [0, 1], )" + ch + "}", "payoffs[0][1]");
  expect_field_error(R"({"payoffs": [[1, 2], [3, 4]], )" + ch + "}", "leader_actions");
  expect_field_error(R"({"payoffs": [[1, 2], [3, 4]], "leader_actions": [1, 0], )" + ch + "}", "leader_actions");
  expect_field_error(R"({"payoffs": [[1, 2], [3, 4]], "leader_actions": [0, 1, 2], )" + ch + "}", "leader_actions");
  expect_field_error(R"({"payoffs": [[1, 2], [3, 4]], "leader_actions": [0, 1]})", "channel");
  expect_field_error(R"({"payoffs": [[1, 2], [3, 4]], "leader_actions": [0, 1], "channel": {"type": "laplace", "sigma": 1}})",
                     "channel.type");
  expect_field_error(R"({"payoffs": [[1, 2], [3, 4]], "leader_actions": [0, 1], "channel": {"type": "gaussian", "sigma": 0}})",
                     "channel.sigma");
  expect_field_error(R"({"payoffs": [[1, 2], [3, 4]], "leader_actions": [0, 1], "channel": {"type": "gaussian"}})",
                     "channel.sigma");
  expect_field_error(
      R"({"payoffs": [[1, 2], [3, 4]], "leader_actions": [0, 1], "channel": {"type": "gaussian", "sigma": 1, "mu": [0]}})",
      "channel.mu");
  expect_field_error(
      R"({"payoffs": [[1, 2], [3, 4]], "leader_actions": [0, 1], "channel": {"type": "gaussian", "sigma": 1, "mu": [1, 0]}})",
      "channel.mu");
}

TEST(LoadGameConfigTest, MissingFile) { EXPECT_THROW(load_game_config("/nonexistent/game.json"), ConfigError); }

TEST(LoadGameConfigTest, BundledGamesLoad) {
  for (const char* name : {"fig1a.json", "fig1b.json", "matching_pennies.json", "rock_paper_scissors.json"}) {
    EXPECT_NO_THROW(load_game_config(std::string(NCG_GAMES_DIR) + "/" + name)) << name;
  }
}

TEST(SweepCsvTest, HeaderAndRoundTripDigits) {
  const std::vector<SweepRow> rows = {{100.0, 0.1, 1.0 / 3, 0.2}};
  const auto csv = sweep_csv(rows);
  EXPECT_EQ(csv, "sigma2,q,v_hat,u_hat\n100,0.10000000000000001,0.33333333333333331,0.20000000000000001\n");
}

}  // namespace
}  // namespace ncg
