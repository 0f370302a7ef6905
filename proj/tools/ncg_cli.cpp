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

// Command-line front end.
//
// Exit codes: 0 ok, 2 configuration or usage error, 3 numeric failure,
// 4 output I/O error, 5 a checked condition failed. Machine-readable output
// goes to stdout (or --out), diagnostics to stderr.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ncg/config.hpp"
#include "ncg/io.hpp"
#include "ncg/ncg.hpp"

namespace {

enum ExitCode : int { kOk = 0, kConfig = 2, kNumeric = 3, kIo = 4, kCheckFailed = 5 };

struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw NumericFailure(std::string(what) + " is not finite");
}

ncg::MixedStrategy commitment_from_flags(const ncg::MatrixGame& g, const std::optional<double>& q,
                                         const std::vector<double>& p2) {
  if (q && !p2.empty()) throw ncg::ConfigError("--q and --p2 are mutually exclusive");
  if (q) {
    if (g.cols() != 2) throw ncg::ConfigError("--q: needs exactly two leader actions; use --p2");
    if (!(*q >= 0.0 && *q <= 1.0)) throw ncg::ConfigError("--q: must lie in [0,1]");
    return ncg::MixedStrategy::binary(*q);
  }
  if (p2.size() != g.cols()) throw ncg::ConfigError("--p2: length must equal the leader action count");
  try {
    return ncg::MixedStrategy(p2);
  } catch (const std::invalid_argument& e) {
    throw ncg::ConfigError(std::string("--p2: ") + e.what());
  }
}

void print(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_nash(const std::string& game_path) {
  const auto cfg = ncg::load_game_config(game_path);
  const auto ne = ncg::solve_matrix_nash(cfg.game);
  require_finite(ne.value, "Nash value");
  print(ncg::to_json(ne));
  return kOk;
}

int cmd_solve(const std::string& game_path, std::optional<double> sigma, std::size_t grid) {
  const auto cfg = ncg::load_game_config(game_path);
  if (sigma && !(*sigma > 0.0)) throw ncg::ConfigError("--sigma: must be > 0");
  const auto ch = cfg.channel(sigma.value_or(cfg.sigma));
  ncg::CommitmentOptions opts;
  opts.grid_points = grid;
  const auto report = ncg::solve_equilibrium(cfg.game, ch, opts);
  require_finite(report.value, "equilibrium value");
  auto j = ncg::to_json(report);
  j["sigma"] = sigma.value_or(cfg.sigma);
  print(j);
  return kOk;
}

int cmd_sweep(const std::string& game_path, const std::vector<double>& sigmas, std::size_t grid,
              const std::string& out_path) {
  const auto cfg = ncg::load_game_config(game_path);
  if (cfg.game.cols() != 2) throw ncg::ConfigError("payoffs: sweep needs exactly two leader actions");
  if (grid < 2) throw ncg::ConfigError("--grid: must be >= 2");
  if (sigmas.empty()) throw ncg::ConfigError("--sigmas: at least one value required");
  for (double s : sigmas)
    if (!(s > 0.0) || !std::isfinite(s)) throw ncg::ConfigError("--sigmas: every value must be > 0");
  std::vector<double> qs(grid);
  for (std::size_t k = 0; k < grid; ++k) qs[k] = static_cast<double>(k) / static_cast<double>(grid - 1);
  const auto rows = ncg::sweep(
      cfg.game, [&](double s) { return cfg.channel(s); }, qs, sigmas);
  for (const auto& r : rows) require_finite(r.v_hat, "v_hat");
  const auto csv = ncg::sweep_csv(rows);

  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot open '" << out_path << "' for writing\n";
    return kIo;
  }
  out << csv;
  out.close();
  if (!out) {
    std::cerr << "error: failed writing '" << out_path << "'\n";
    return kIo;
  }
  std::cerr << "wrote " << rows.size() << " rows to " << out_path << '\n';
  return kOk;
}

int cmd_simulate(const std::string& game_path, std::optional<double> q, const std::vector<double>& p2_flag,
                 std::optional<double> sigma, std::size_t samples, std::uint64_t seed) {
  const auto cfg = ncg::load_game_config(game_path);
  if (sigma && !(*sigma > 0.0)) throw ncg::ConfigError("--sigma: must be > 0");
  if (samples == 0) throw ncg::ConfigError("--samples: must be >= 1");
  const auto p2 = commitment_from_flags(cfg.game, q, p2_flag);
  const auto ch = cfg.channel(sigma.value_or(cfg.sigma));
  const auto rule = ncg::canonical_rule(cfg.game, ch, p2);
  const auto sim = ncg::estimate_value(cfg.game, ch, rule, p2, samples, seed);
  const double analytic = ncg::expected_payoff_noisy(cfg.game, ch, rule, p2);
  require_finite(analytic, "analytic value");
  auto j = ncg::to_json(sim);
  j["analytic"] = analytic;
  j["commitment"] = ncg::to_json(p2);
  j["sigma"] = sigma.value_or(cfg.sigma);
  if (samples == 1) j["warning"] = "stderr undefined for a single sample; reported as 0";
  print(j);
  return kOk;
}

int cmd_check(const std::string& game_path, std::optional<double> q, const std::vector<double>& p2_flag,
              std::optional<double> sigma) {
  const auto cfg = ncg::load_game_config(game_path);
  if (sigma && !(*sigma > 0.0)) throw ncg::ConfigError("--sigma: must be > 0");
  const auto ch = cfg.channel(sigma.value_or(cfg.sigma));
  const auto opt = ncg::optimal_commitment(cfg.game, ch);
  const auto p2 = (q || !p2_flag.empty()) ? commitment_from_flags(cfg.game, q, p2_flag) : opt.p2;

  const auto reg = ncg::check_regularity(cfg.game, ch, p2);
  const auto sand = ncg::sandwich_check(cfg.game, ch, p2, opt.value);
  require_finite(sand.v_hat_p2, "v_hat");

  std::vector<std::string> violations;
  if (!reg.nonzero_differences) violations.emplace_back("nonzero_differences");
  if (reg.tie_set_measure && *reg.tie_set_measure > 0.0) violations.emplace_back("tie_set_measure");
  if (!sand.lower_ok) violations.emplace_back("sandwich_lower");
  if (!sand.middle_ok) violations.emplace_back("sandwich_middle");
  if (!sand.upper_ok) violations.emplace_back("sandwich_upper");

  nlohmann::json j = {{"commitment", ncg::to_json(p2)},
                      {"sigma", sigma.value_or(cfg.sigma)},
                      {"regularity", ncg::to_json(reg)},
                      {"sandwich", ncg::to_json(sand)},
                      {"violations", violations}};
  print(j);
  if (!violations.empty()) {
    std::cerr << "check failed:";
    for (const auto& v : violations) std::cerr << ' ' << v;
    std::cerr << '\n';
    return kCheckFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-sum games with noisy observation of the leader's action"};
  app.require_subcommand(1);

  std::string game;
  std::optional<double> sigma;
  std::optional<double> q;
  std::vector<double> p2;
  std::vector<double> sigmas;
  std::size_t grid = 512;
  std::size_t sweep_grid = 401;
  std::string out;
  std::size_t samples = 1000000;
  std::uint64_t seed = 0;

  auto* nash = app.add_subcommand("nash", "Mixed Nash equilibrium of the payoff matrix");
  nash->add_option("--game", game, "Game JSON file")->required();

  auto* solve = app.add_subcommand("solve", "Optimal commitment and equilibrium report");
  solve->add_option("--game", game, "Game JSON file")->required();
  solve->add_option("--sigma", sigma, "Override the channel noise standard deviation");
  solve->add_option("--grid", grid, "Commitment grid points for two leader actions")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Tabulate v_hat and u_hat over commitments and noise levels");
  sweep->add_option("--game", game, "Game JSON file")->required();
  sweep->add_option("--sigmas", sigmas, "Noise standard deviations, comma separated")->required()->delimiter(',');
  sweep->add_option("--grid", sweep_grid, "Number of q grid points on [0,1]")->capture_default_str();
  sweep->add_option("--out", out, "Output CSV file")->required();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the payoff under the canonical rule");
  simulate->add_option("--game", game, "Game JSON file")->required();
  simulate->add_option("--q", q, "Probability of the first leader action");
  simulate->add_option("--p2", p2, "Full commitment vector, comma separated")->delimiter(',');
  simulate->add_option("--sigma", sigma, "Override the channel noise standard deviation");
  simulate->add_option("--samples", samples, "Number of plays")->capture_default_str();
  simulate->add_option("--seed", seed, "Master seed")->capture_default_str();

  auto* check = app.add_subcommand("check", "Regularity conditions and payoff ordering checks");
  check->add_option("--game", game, "Game JSON file")->required();
  check->add_option("--q", q, "Probability of the first leader action (default: optimal commitment)");
  check->add_option("--p2", p2, "Full commitment vector, comma separated")->delimiter(',');
  check->add_option("--sigma", sigma, "Override the channel noise standard deviation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*nash) return cmd_nash(game);
    if (*solve) return cmd_solve(game, sigma, grid);
    if (*sweep) return cmd_sweep(game, sigmas, sweep_grid, out);
    if (*simulate) {
      if (!q && p2.empty()) throw ncg::ConfigError("simulate: one of --q or --p2 is required");
      return cmd_simulate(game, q, p2, sigma, samples, seed);
    }
    if (*check) return cmd_check(game, q, p2, sigma);
  } catch (const ncg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
  return kConfig;
}
