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

// Multi-seed experiments driven by a JSON config.
//
//   {
//     "market": {"utilities": [[...], ...], "arm_ranking": [1, 2, ...]}
//            | {"generator": {"n_players": 3, "n_arms": 5,
//                             "min_gap": 0.05, "seed": 1}}
//            | "path/to/market.json",
//     "policy": "mlss-elim" | {"tag": "etc", "h": 400,
//                              "phase_length_override": 12},
//     "horizon": 100000,
//     "seeds": [1, 2, 3],
//     "reward": "gaussian",            // optional
//     "output_dir": "out",             // optional
//     "heatmap_bin_width": 1000,       // optional
//     "write_traces": false,           // optional
//     "threads": 0                     // optional, 0 = hardware
//   }

#ifndef MLSS_EXPERIMENT_H_
#define MLSS_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mlss/env.h"
#include "mlss/harness.h"
#include "mlss/market.h"
#include "mlss/policy.h"

namespace mlss {

struct MarketGenerator {
  int n_players = 0;
  int n_arms = 0;
  double min_gap = 0.0;
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  std::optional<MarketInstance> market;  // inline or loaded from a file
  std::optional<MarketGenerator> generator;
  PolicySpec policy;
  std::int64_t horizon = 0;
  std::vector<std::uint64_t> seeds;
  RewardFamily reward = RewardFamily::kGaussian;
  std::filesystem::path output_dir = "out";
  int heatmap_bin_width = 1000;
  bool write_traces = false;
  int threads = 0;

  MarketInstance resolve_market() const;
  // Throws ConfigError on any violated invariant.
  void validate() const;
  nlohmann::json to_json() const;
};

// Relative market paths resolve against `base_dir`.
ExperimentConfig config_from_json(const nlohmann::json& j,
                                  const std::filesystem::path& base_dir = ".");
// Throws IoError if unreadable, ConfigError if malformed.
ExperimentConfig load_config(const std::filesystem::path& path);

// 3 players, 5 arms, uniform utilities with gap >= 0.05, T = 100000,
// seeds 1..10, 1000-round bins.
ExperimentConfig figure1_preset();
inline constexpr std::uint64_t kFigure1MarketSeed = 28;

struct EpisodeResult {
  std::uint64_t seed = 0;
  std::vector<double> final_regret;  // per player
  double total_regret = 0.0;
  int protocol_errors = 0;
  Heatmap heatmap;
  std::string regret_csv;
  std::string heatmap_csv;
  std::string trace_csv;  // empty unless write_traces
};

struct ExperimentResult {
  MarketInstance market;
  Matching stable;
  std::vector<EpisodeResult> episodes;  // in config seed order
  nlohmann::json summary;
};

// Runs every seed (in parallel when threads != 1); results do not depend
// on the thread count.
ExperimentResult simulate(const ExperimentConfig& config);

// simulate() plus files under output_dir: regret_seed<s>.csv,
// heatmap_seed<s>.csv, trace_seed<s>.csv (optional), summary.json.
// Throws IoError if the directory or a file cannot be written.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::string version_string();

}  // namespace mlss

#endif  // MLSS_EXPERIMENT_H_
