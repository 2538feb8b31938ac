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

// Reference policies. The centralized ones see the full matching each round
// and know the arms' (shared) ranking, as a platform would.

#ifndef MLSS_BASELINES_H_
#define MLSS_BASELINES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mlss/arm_stats.h"
#include "mlss/market.h"
#include "mlss/policy.h"

namespace mlss {

// Explore-then-commit: K*h conflict-free round-robin rounds (player i tries
// arm (t-1+i) mod K in round t), then Gale-Shapley on empirical means.
class EtcPolicy : public Policy {
 public:
  EtcPolicy(const MarketInstance& market, int h);

  int n_players() const override { return n_players_; }
  int n_arms() const override { return n_arms_; }
  InfoModel info_model() const override { return InfoModel::kFull; }
  std::vector<Action> act(std::int64_t round) override;
  void observe(std::span<const Observation> observations) override;

  std::int64_t exploration_rounds() const {
    return static_cast<std::int64_t>(n_arms_) * h_;
  }
  const std::optional<Matching>& commit_matching() const { return commit_; }
  const ArmStats& stats(int player) const { return stats_[player]; }

 private:
  int n_players_;
  int n_arms_;
  int h_;
  std::vector<int> arm_ranking_;
  std::vector<ArmStats> stats_;
  std::optional<Matching> commit_;
};

// Arms by decreasing UCB (lowest index on ties).
std::vector<int> ucb_preference_list(const ArmStats& stats, double ln_horizon);

// Gale-Shapley over UCB-induced player lists and the true arm ranking.
Matching central_ucb_matching(std::span<const ArmStats> stats,
                              const std::vector<int>& arm_ranking,
                              double ln_horizon);

class CentralUcbPolicy : public Policy {
 public:
  CentralUcbPolicy(const MarketInstance& market, std::int64_t horizon);

  int n_players() const override { return n_players_; }
  int n_arms() const override { return n_arms_; }
  InfoModel info_model() const override { return InfoModel::kFull; }
  std::vector<Action> act(std::int64_t round) override;
  void observe(std::span<const Observation> observations) override;

  const ArmStats& stats(int player) const { return stats_[player]; }
  const std::vector<std::vector<int>>& last_preferences() const { return last_prefs_; }
  const Matching& last_matching() const { return last_matching_; }

 private:
  int n_players_;
  int n_arms_;
  double ln_horizon_;
  std::vector<int> arm_ranking_;
  std::vector<ArmStats> stats_;
  std::vector<std::vector<int>> last_prefs_;
  Matching last_matching_;
};

// Everyone proposes its stable arm; zero regret.
class OraclePolicy : public Policy {
 public:
  explicit OraclePolicy(const MarketInstance& market);

  int n_players() const override { return static_cast<int>(stable_.arm_of.size()); }
  int n_arms() const override { return n_arms_; }
  InfoModel info_model() const override { return InfoModel::kFull; }
  std::vector<Action> act(std::int64_t round) override;
  void observe(std::span<const Observation>) override {}

 private:
  int n_arms_;
  Matching stable_;
};

// Independent uniform proposals from a (seed, player, round) stream.
class RandomPolicy : public Policy {
 public:
  RandomPolicy(int n_players, int n_arms, std::uint64_t seed);

  int n_players() const override { return n_players_; }
  int n_arms() const override { return n_arms_; }
  InfoModel info_model() const override { return InfoModel::kCollisionOnly; }
  std::vector<Action> act(std::int64_t round) override;
  void observe(std::span<const Observation>) override {}

 private:
  int n_players_;
  int n_arms_;
  std::uint64_t seed_;
};

}  // namespace mlss

#endif  // MLSS_BASELINES_H_
