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

#include "mlss/env.h"

#include <string>

#include <fmt/format.h>

#include "mlss/error.h"
#include "mlss/rng.h"

namespace mlss {

RewardFamily parse_reward_family(std::string_view tag) {
  if (tag == "gaussian") return RewardFamily::kGaussian;
  if (tag == "bernoulli") return RewardFamily::kBernoulli;
  if (tag == "deterministic") return RewardFamily::kDeterministic;
  throw ConfigError(fmt::format("unknown reward distribution '{}'", tag));
}

std::string_view reward_family_name(RewardFamily family) {
  switch (family) {
    case RewardFamily::kGaussian:
      return "gaussian";
    case RewardFamily::kBernoulli:
      return "bernoulli";
    case RewardFamily::kDeterministic:
      return "deterministic";
  }
  return "unknown";
}

MatchOutcome resolve_round(const MarketInstance& market,
                           std::span<const Action> actions,
                           std::int64_t round) {
  const int n = market.n_players();
  if (static_cast<int>(actions.size()) != n) {
    throw ConfigError(fmt::format("expected {} actions, got {}", n, actions.size()));
  }
  MatchOutcome outcome;
  outcome.round = round;
  outcome.actions.assign(actions.begin(), actions.end());
  outcome.matched.assign(n, kUnmatched);
  outcome.rewards.assign(n, 0.0);
  std::vector<int> winner(market.n_arms(), kUnmatched);
  for (int i = 0; i < n; ++i) {
    const Action a = actions[i];
    if (a.is_abstain()) continue;
    if (a.arm() < 0 || a.arm() >= market.n_arms()) {
      throw ConfigError(fmt::format("player {} proposed invalid arm {}", i + 1,
                                    a.arm() + 1));
    }
    int& w = winner[a.arm()];
    if (w == kUnmatched || market.arm_prefers(i, w)) w = i;
  }
  for (int k = 0; k < market.n_arms(); ++k) {
    if (winner[k] != kUnmatched) outcome.matched[winner[k]] = k;
  }
  return outcome;
}

void sample_rewards(const MarketInstance& market, MatchOutcome& outcome,
                    RewardFamily family, std::uint64_t episode_seed) {
  for (int i = 0; i < market.n_players(); ++i) {
    const int arm = outcome.matched[i];
    if (arm == kUnmatched) {
      outcome.rewards[i] = 0.0;
      continue;
    }
    const double mu = market.utility(i, arm);
    switch (family) {
      case RewardFamily::kDeterministic:
        outcome.rewards[i] = mu;
        break;
      case RewardFamily::kGaussian: {
        CounterRng rng(episode_seed, StreamTag::kReward, static_cast<std::uint64_t>(i),
                       static_cast<std::uint64_t>(outcome.round));
        outcome.rewards[i] = mu + rng.normal();
        break;
      }
      case RewardFamily::kBernoulli: {
        CounterRng rng(episode_seed, StreamTag::kReward, static_cast<std::uint64_t>(i),
                       static_cast<std::uint64_t>(outcome.round));
        outcome.rewards[i] = rng.uniform() < mu ? 1.0 : 0.0;
        break;
      }
    }
  }
}

Observation observe(const MatchOutcome& outcome, int player, InfoModel model) {
  Observation obs;
  obs.own_action = outcome.actions[player];
  obs.matched = outcome.matched[player] != kUnmatched;
  obs.reward = obs.matched ? outcome.rewards[player] : 0.0;
  obs.round = outcome.round;
  if (model == InfoModel::kFull) obs.full_matching = outcome.matched;
  return obs;
}

}  // namespace mlss
