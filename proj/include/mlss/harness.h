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

// Episode driver, regret accounting and per-bin proposal counts.
//
// Internally rounds are 1-based and players/arms 0-based; the CSV writers
// emit 1-based players, arms and bins.

#ifndef MLSS_HARNESS_H_
#define MLSS_HARNESS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mlss/env.h"
#include "mlss/market.h"
#include "mlss/policy.h"

namespace mlss {

struct Trace {
  int n_players = 0;
  int n_arms = 0;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  std::string policy_tag;
  std::string market_digest;
  int protocol_errors = 0;

  // Flat [(round - 1) * n_players + player].
  std::vector<int> actions;   // arm or Action::kAbstain
  std::vector<int> matched;   // arm or kUnmatched
  std::vector<double> rewards;

  std::size_t at(std::int64_t round, int player) const {
    return static_cast<std::size_t>(round - 1) * n_players + player;
  }
  int action(std::int64_t round, int player) const { return actions[at(round, player)]; }
  int matched_arm(std::int64_t round, int player) const { return matched[at(round, player)]; }
  double reward(std::int64_t round, int player) const { return rewards[at(round, player)]; }
};

// Called after each round is resolved and fed back; sees the true outcome.
// For instrumentation only.
using RoundHook = std::function<void(const MatchOutcome&)>;

// Throws ConfigError when the policy's dimensions differ from the market's.
Trace run_episode(const MarketInstance& market, Policy& policy, std::int64_t horizon,
                  std::uint64_t seed, RewardFamily family = RewardFamily::kGaussian,
                  const std::string& policy_tag = "", const RoundHook& hook = {});

struct RegretSeries {
  // cumulative[player][round - 1]
  std::vector<std::vector<double>> cumulative;

  double final_regret(int player) const {
    return cumulative[player].empty() ? 0.0 : cumulative[player].back();
  }
  double final_total() const;
};

// Pseudo-regret against the serial-dictatorship stable matching.
RegretSeries stable_regret(const Trace& trace, const MarketInstance& market);

struct Heatmap {
  int n_bins = 0;
  int n_players = 0;
  int n_arms = 0;
  int bin_width = 1;
  std::vector<std::int64_t> counts;  // [(bin * N + player) * K + arm]

  std::int64_t count(int bin, int player, int arm) const {
    return counts[(static_cast<std::size_t>(bin) * n_players + player) * n_arms + arm];
  }
};

// Proposals (not matches) per (bin, player, arm). Throws ConfigError if
// bin_width < 1.
Heatmap heatmap_bins(const Trace& trace, int bin_width);

// Fraction of `player`'s proposals to `arm` over bins [first, last).
double proposal_share(const Heatmap& heatmap, int player, int arm, int first_bin,
                      int last_bin);

// First bin (0-based) whose share of proposals to `arm` reaches `threshold`
// of the bin's rounds.
std::optional<int> convergence_bin(const Heatmap& heatmap, std::int64_t horizon,
                                   int player, int arm, double threshold = 0.99);

// Rounds kept when downsampling a curve to at most `max_points`: roughly
// log-spaced, always including 1 and `horizon`.
std::vector<std::int64_t> geometric_rounds(std::int64_t horizon, int max_points);

void write_trace_csv(std::ostream& out, const Trace& trace);
// At most `max_rows` data rows in total.
void write_regret_csv(std::ostream& out, const RegretSeries& regret, int max_rows = 2000);
void write_heatmap_csv(std::ostream& out, const Heatmap& heatmap);

}  // namespace mlss

#endif  // MLSS_HARNESS_H_
