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

// Ground-truth two-sided market under serial dictatorship.
//
// Players and arms are 0-based internally. All arms share one preference
// ranking over players (`arm_ranking`, most preferred first), which makes
// the stable matching unique and gives the players a strict hierarchy.

#ifndef MLSS_MARKET_H_
#define MLSS_MARKET_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mlss {

inline constexpr int kUnmatched = -1;

class MarketInstance {
 public:
  // Validates every invariant; throws MarketError on violation.
  // `utilities` is row-major, n_players x n_arms.
  MarketInstance(int n_players, int n_arms, std::vector<double> utilities,
                 std::vector<int> arm_ranking);

  // Identity ranking (player 0 most preferred).
  MarketInstance(int n_players, int n_arms, std::vector<double> utilities);

  int n_players() const { return n_players_; }
  int n_arms() const { return n_arms_; }
  double utility(int player, int arm) const {
    return utilities_[static_cast<std::size_t>(player) * n_arms_ + arm];
  }
  std::span<const double> row(int player) const {
    return {utilities_.data() + static_cast<std::size_t>(player) * n_arms_,
            static_cast<std::size_t>(n_arms_)};
  }
  std::span<const double> utilities() const { return utilities_; }
  const std::vector<int>& arm_ranking() const { return arm_ranking_; }

  // Position of `player` in the shared ranking; lower is preferred.
  int priority(int player) const { return priority_[player]; }
  bool arm_prefers(int player, int other) const {
    return priority_[player] < priority_[other];
  }

  friend bool operator==(const MarketInstance&, const MarketInstance&) = default;

 private:
  int n_players_;
  int n_arms_;
  std::vector<double> utilities_;
  std::vector<int> arm_ranking_;
  std::vector<int> priority_;
};

struct Matching {
  std::vector<int> arm_of;  // per player, or kUnmatched

  int n_players() const { return static_cast<int>(arm_of.size()); }
  // Throws MarketError if an arm is used twice or an index is out of range.
  void validate(int n_arms) const;

  friend bool operator==(const Matching&, const Matching&) = default;
};

inline constexpr int kDefaultRetryBudget = 10'000;

// Utilities i.i.d. Uniform(0,1], rows rejection-sampled until every
// within-row pairwise gap is >= min_gap (and entries are distinct).
MarketInstance generate_market(int n_players, int n_arms, double min_gap,
                               std::uint64_t seed,
                               int retry_budget = kDefaultRetryBudget);

// Smallest |mu[i][k] - mu[i][k']| over all players and arm pairs.
double min_gap(const MarketInstance& market);

// Greedy in ranking order: each player takes its best remaining arm.
Matching stable_matching_serial(const MarketInstance& market);

// Player-proposing deferred acceptance. player_prefs[i] ranks all arms,
// arm_prefs[k] ranks all players, most preferred first.
Matching gale_shapley(const std::vector<std::vector<int>>& player_prefs,
                      const std::vector<std::vector<int>>& arm_prefs);

// Arms ordered by decreasing utility for `player`.
std::vector<int> preference_order(const MarketInstance& market, int player);

// Preference lists induced by a market, in gale_shapley's input format.
std::vector<std::vector<int>> player_preferences(const MarketInstance& market);
std::vector<std::vector<int>> arm_preferences(const MarketInstance& market);

// Every (player, arm) pair that would both rather be together. An unmatched
// player values its outcome at 0.
std::vector<std::pair<int, int>> blocking_pairs(const MarketInstance& market,
                                                const Matching& matching);

}  // namespace mlss

#endif  // MLSS_MARKET_H_
