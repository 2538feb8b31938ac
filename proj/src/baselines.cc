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

#include "mlss/baselines.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "mlss/error.h"
#include "mlss/rng.h"

namespace mlss {
namespace {

std::vector<int> order_by_desc(std::span<const double> score) {
  std::vector<int> order(score.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return score[a] > score[b]; });
  return order;
}

std::vector<Action> propose_matching(const Matching& m) {
  std::vector<Action> actions;
  actions.reserve(m.arm_of.size());
  for (int arm : m.arm_of) {
    actions.push_back(arm == kUnmatched ? Action::abstain() : Action::propose(arm));
  }
  return actions;
}

void credit(std::vector<ArmStats>& stats, std::span<const Observation> observations) {
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const Observation& o = observations[i];
    if (o.matched) stats[i].update(o.own_action.arm(), o.reward);
  }
}

}  // namespace

EtcPolicy::EtcPolicy(const MarketInstance& market, int h)
    : n_players_(market.n_players()),
      n_arms_(market.n_arms()),
      h_(h),
      arm_ranking_(market.arm_ranking()),
      stats_(market.n_players(), ArmStats(market.n_arms())) {
  if (h < 1) throw ConfigError(fmt::format("ETC needs h >= 1, got {}", h));
}

std::vector<Action> EtcPolicy::act(std::int64_t round) {
  if (round <= exploration_rounds()) {
    std::vector<Action> actions;
    actions.reserve(n_players_);
    for (int i = 0; i < n_players_; ++i) {
      actions.push_back(Action::propose(static_cast<int>((round - 1 + i) % n_arms_)));
    }
    return actions;
  }
  if (!commit_) {
    std::vector<std::vector<int>> player_prefs;
    for (const auto& s : stats_) {
      std::vector<double> means;
      for (const auto& e : s.entries()) means.push_back(e.mean);
      player_prefs.push_back(order_by_desc(means));
    }
    commit_ = gale_shapley(player_prefs,
                           std::vector<std::vector<int>>(n_arms_, arm_ranking_));
  }
  return propose_matching(*commit_);
}

void EtcPolicy::observe(std::span<const Observation> observations) {
  if (!commit_) credit(stats_, observations);
}

std::vector<int> ucb_preference_list(const ArmStats& stats, double ln_horizon) {
  std::vector<double> ucb;
  ucb.reserve(stats.n_arms());
  for (const auto& e : stats.entries()) ucb.push_back(confidence_bounds(e, ln_horizon).ucb);
  return order_by_desc(ucb);
}

Matching central_ucb_matching(std::span<const ArmStats> stats,
                              const std::vector<int>& arm_ranking,
                              double ln_horizon) {
  std::vector<std::vector<int>> prefs;
  prefs.reserve(stats.size());
  for (const auto& s : stats) prefs.push_back(ucb_preference_list(s, ln_horizon));
  const int k = stats.empty() ? 0 : stats.front().n_arms();
  return gale_shapley(prefs, std::vector<std::vector<int>>(k, arm_ranking));
}

CentralUcbPolicy::CentralUcbPolicy(const MarketInstance& market, std::int64_t horizon)
    : n_players_(market.n_players()),
      n_arms_(market.n_arms()),
      ln_horizon_(std::log(static_cast<double>(std::max<std::int64_t>(horizon, 1)))),
      arm_ranking_(market.arm_ranking()),
      stats_(market.n_players(), ArmStats(market.n_arms())) {}

std::vector<Action> CentralUcbPolicy::act(std::int64_t /*round*/) {
  last_prefs_.clear();
  for (const auto& s : stats_) last_prefs_.push_back(ucb_preference_list(s, ln_horizon_));
  last_matching_ = gale_shapley(last_prefs_,
                                std::vector<std::vector<int>>(n_arms_, arm_ranking_));
  return propose_matching(last_matching_);
}

void CentralUcbPolicy::observe(std::span<const Observation> observations) {
  credit(stats_, observations);
}

OraclePolicy::OraclePolicy(const MarketInstance& market)
    : n_arms_(market.n_arms()), stable_(stable_matching_serial(market)) {}

std::vector<Action> OraclePolicy::act(std::int64_t /*round*/) {
  return propose_matching(stable_);
}

RandomPolicy::RandomPolicy(int n_players, int n_arms, std::uint64_t seed)
    : n_players_(n_players), n_arms_(n_arms), seed_(seed) {}

std::vector<Action> RandomPolicy::act(std::int64_t round) {
  std::vector<Action> actions;
  actions.reserve(n_players_);
  for (int i = 0; i < n_players_; ++i) {
    CounterRng rng(seed_, StreamTag::kRandomPolicy, static_cast<std::uint64_t>(i),
                   static_cast<std::uint64_t>(round));
    actions.push_back(Action::propose(static_cast<int>(rng.below(n_arms_))));
  }
  return actions;
}

}  // namespace mlss
