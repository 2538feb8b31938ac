// Copyright 2026 The MLSS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// mlss run --config <path> | --preset figure1 [--policy TAG] [--output-dir DIR]
// mlss validate --market <path>
// mlss oracle --market <path>
//
// Exit status: 0 ok, 2 configuration error, 3 I/O error.

#include <cstdio>
#include <optional>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "mlss/error.h"
#include "mlss/experiment.h"
#include "mlss/market.h"
#include "mlss/market_io.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

int cmd_run(const std::string& config_path, const std::string& preset,
            const std::string& policy, const std::string& output_dir, int threads) {
  mlss::ExperimentConfig config;
  if (!preset.empty()) {
    if (preset != "figure1") throw mlss::ConfigError(fmt::format("unknown preset '{}'", preset));
    config = mlss::figure1_preset();
  } else {
    config = mlss::load_config(config_path);
  }
  if (!policy.empty()) config.policy.tag = policy;
  if (!output_dir.empty()) config.output_dir = output_dir;
  if (threads >= 0) config.threads = threads;

  const mlss::ExperimentResult r = mlss::run_experiment(config);
  const auto& total = r.summary["final_regret"]["total"];
  fmt::print("policy {}  horizon {}  seeds {}  market {}\n", config.policy.tag,
             config.horizon, config.seeds.size(), r.summary["market_digest"].get<std::string>());
  const auto& per_player = r.summary["final_regret"]["per_player"];
  for (std::size_t i = 0; i < per_player.size(); ++i) {
    fmt::print("  p{} regret {:.3f} +- {:.3f}\n", i + 1, per_player[i]["mean"].get<double>(),
               per_player[i]["stddev"].get<double>());
  }
  fmt::print("  total    {:.3f} +- {:.3f}\n", total["mean"].get<double>(),
             total["stddev"].get<double>());
  fmt::print("wrote {}\n", config.output_dir.string());
  return 0;
}

int cmd_validate(const std::string& path) {
  const mlss::MarketInstance m = mlss::load_market(path);
  fmt::print("ok: {} players, {} arms, digest {}\n", m.n_players(), m.n_arms(),
             mlss::market_digest(m));
  return 0;
}

int cmd_oracle(const std::string& path) {
  const mlss::MarketInstance m = mlss::load_market(path);
  const mlss::Matching stable = mlss::stable_matching_serial(m);
  for (int i = 0; i < m.n_players(); ++i) {
    fmt::print("p{} -> a{}  ({:.6g})\n", i + 1, stable.arm_of[i] + 1,
               m.utility(i, stable.arm_of[i]));
  }
  if (m.n_arms() >= 2) {
    fmt::print("delta {:.6g}\n", mlss::min_gap(m));
  } else {
    fmt::print("delta undefined (single arm)\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bandit learning in matching markets under serial dictatorship"};
  app.require_subcommand(1);

  std::string config_path, preset, policy, output_dir, market_path;
  int threads = -1;

  auto* run = app.add_subcommand("run", "Run a multi-seed experiment");
  auto* cfg_opt = run->add_option("--config", config_path, "Experiment config JSON");
  auto* preset_opt = run->add_option("--preset", preset, "Built-in config (figure1)");
  cfg_opt->excludes(preset_opt);
  run->add_option("--policy", policy, "Override the policy tag");
  run->add_option("--output-dir", output_dir, "Override the output directory");
  run->add_option("--threads", threads, "Worker threads (0 = hardware)");

  auto* validate = app.add_subcommand("validate", "Check a market file");
  validate->add_option("--market", market_path, "Market JSON")->required();
  auto* oracle = app.add_subcommand("oracle", "Print the stable matching and min gap");
  oracle->add_option("--market", market_path, "Market JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (run->parsed()) {
      if (config_path.empty() && preset.empty()) {
        throw mlss::ConfigError("run needs --config or --preset");
      }
      return cmd_run(config_path, preset, policy, output_dir, threads);
    }
    if (validate->parsed()) return cmd_validate(market_path);
    if (oracle->parsed()) return cmd_oracle(market_path);
  } catch (const mlss::IoError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitIo;
  } catch (const mlss::ConfigError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitConfig;
  } catch (const mlss::Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
