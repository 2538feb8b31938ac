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

// One round of market mechanics: proposals are resolved by the shared arm
// ranking, matched players draw a reward, everyone else gets 0.

#ifndef MLSS_ENV_H_
#define MLSS_ENV_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mlss/market.h"

namespace mlss {

class Action {
 public:
  static constexpr int kAbstain = -1;

  constexpr Action() = default;
  static constexpr Action propose(int arm) { return Action(arm); }
  static constexpr Action abstain() { return Action(); }

  constexpr bool is_abstain() const { return arm_ == kAbstain; }
  // Arm index, or kAbstain.
  constexpr int arm() const { return arm_; }

  friend constexpr bool operator==(Action, Action) = default;

 private:
  constexpr explicit Action(int arm) : arm_(arm) {}
  int arm_ = kAbstain;
};

enum class InfoModel { kCollisionOnly, kFull };

enum class RewardFamily { kGaussian, kBernoulli, kDeterministic };

// "gaussian" | "bernoulli" | "deterministic"; throws ConfigError otherwise.
RewardFamily parse_reward_family(std::string_view tag);
std::string_view reward_family_name(RewardFamily family);

struct MatchOutcome {
  std::int64_t round = 0;
  std::vector<Action> actions;
  std::vector<int> matched;      // per player: arm or kUnmatched
  std::vector<double> rewards;   // 0.0 for unmatched players
};

// Winner of each arm is the proposer ranked highest by the arm; rewards are
// left at 0.0 until sample_rewards.
MatchOutcome resolve_round(const MarketInstance& market,
                           std::span<const Action> actions,
                           std::int64_t round = 0);

// Draws from a stream keyed by (episode_seed, player, round), so a player's
// reward sequence does not depend on evaluation order.
void sample_rewards(const MarketInstance& market, MatchOutcome& outcome,
                    RewardFamily family, std::uint64_t episode_seed);

struct Observation {
  Action own_action;
  bool matched = false;
  double reward = 0.0;
  std::int64_t round = 0;
  // Only under InfoModel::kFull.
  std::optional<std::vector<int>> full_matching;
};

Observation observe(const MatchOutcome& outcome, int player, InfoModel model);

}  // namespace mlss

#endif  // MLSS_ENV_H_
