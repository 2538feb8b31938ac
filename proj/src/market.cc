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

#include "mlss/market.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "mlss/error.h"
#include "mlss/rng.h"

namespace mlss {
namespace {

std::vector<int> identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

bool is_permutation_of_range(const std::vector<int>& v, int n) {
  if (static_cast<int>(v.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int x : v) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

// Smallest pairwise gap within one row; +inf for a single entry.
double row_min_gap(std::span<const double> row) {
  std::vector<double> sorted(row.begin(), row.end());
  std::sort(sorted.begin(), sorted.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    gap = std::min(gap, sorted[k] - sorted[k - 1]);
  }
  return gap;
}

}  // namespace

MarketInstance::MarketInstance(int n_players, int n_arms,
                               std::vector<double> utilities,
                               std::vector<int> arm_ranking)
    : n_players_(n_players),
      n_arms_(n_arms),
      utilities_(std::move(utilities)),
      arm_ranking_(std::move(arm_ranking)) {
  if (n_players_ < 1) throw MarketError("market needs at least one player");
  if (n_arms_ < n_players_) {
    throw MarketError(fmt::format("market needs N <= K, got N={} K={}",
                                  n_players_, n_arms_));
  }
  const auto expected = static_cast<std::size_t>(n_players_) * n_arms_;
  if (utilities_.size() != expected) {
    throw MarketError(fmt::format("utilities has {} entries, expected {}",
                                  utilities_.size(), expected));
  }
  for (double u : utilities_) {
    if (!std::isfinite(u) || u <= 0.0) {
      throw MarketError(fmt::format("utility {} is not a positive real", u));
    }
  }
  for (int i = 0; i < n_players_; ++i) {
    if (!(row_min_gap(row(i)) > 0.0)) {
      throw MarketError(
          fmt::format("player {} has tied utilities", i + 1));
    }
  }
  if (!is_permutation_of_range(arm_ranking_, n_players_)) {
    throw MarketError("arm_ranking is not a permutation of the players");
  }
  priority_.assign(n_players_, 0);
  for (int pos = 0; pos < n_players_; ++pos) priority_[arm_ranking_[pos]] = pos;
}

MarketInstance::MarketInstance(int n_players, int n_arms,
                               std::vector<double> utilities)
    : MarketInstance(n_players, n_arms, std::move(utilities),
                     identity(std::max(n_players, 0))) {}

void Matching::validate(int n_arms) const {
  std::vector<char> used(std::max(n_arms, 0), 0);
  for (int arm : arm_of) {
    if (arm == kUnmatched) continue;
    if (arm < 0 || arm >= n_arms) {
      throw MarketError(fmt::format("matched arm {} out of range", arm));
    }
    if (used[arm]) {
      throw MarketError(fmt::format("arm {} matched twice", arm + 1));
    }
    used[arm] = 1;
  }
}

MarketInstance generate_market(int n_players, int n_arms, double min_gap,
                               std::uint64_t seed, int retry_budget) {
  if (n_players < 1 || n_arms < n_players) {
    throw MarketError(fmt::format(
        "generate_market needs 1 <= N <= K, got N={} K={}", n_players, n_arms));
  }
  if (!(min_gap >= 0.0)) {
    throw MarketError(fmt::format("min_gap {} must be >= 0", min_gap));
  }
  if (n_arms >= 2 && min_gap >= 1.0 / (n_arms - 1)) {
    throw MarketError(fmt::format(
        "min_gap {} is infeasible for {} arms in (0,1] (must be < {})",
        min_gap, n_arms, 1.0 / (n_arms - 1)));
  }
  std::vector<double> utilities;
  utilities.reserve(static_cast<std::size_t>(n_players) * n_arms);
  std::vector<double> row(n_arms);
  for (int i = 0; i < n_players; ++i) {
    CounterRng rng(seed, StreamTag::kMarket, static_cast<std::uint64_t>(i));
    bool accepted = false;
    for (int attempt = 0; attempt < retry_budget && !accepted; ++attempt) {
      for (double& u : row) u = rng.uniform_positive();
      const double gap = row_min_gap(row);
      accepted = gap > 0.0 && gap >= min_gap;
    }
    if (!accepted) {
      throw MarketError(fmt::format(
          "could not draw row {} with min_gap {} in {} attempts", i + 1,
          min_gap, retry_budget));
    }
    utilities.insert(utilities.end(), row.begin(), row.end());
  }
  return MarketInstance(n_players, n_arms, std::move(utilities));
}

double min_gap(const MarketInstance& market) {
  if (market.n_arms() < 2) {
    throw MarketError("min_gap is undefined for a single arm");
  }
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < market.n_players(); ++i) {
    gap = std::min(gap, row_min_gap(market.row(i)));
  }
  return gap;
}

std::vector<int> preference_order(const MarketInstance& market, int player) {
  std::vector<int> order = identity(market.n_arms());
  const auto row = market.row(player);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return row[a] > row[b]; });
  return order;
}

std::vector<std::vector<int>> player_preferences(const MarketInstance& market) {
  std::vector<std::vector<int>> prefs;
  prefs.reserve(market.n_players());
  for (int i = 0; i < market.n_players(); ++i) {
    prefs.push_back(preference_order(market, i));
  }
  return prefs;
}

std::vector<std::vector<int>> arm_preferences(const MarketInstance& market) {
  return std::vector<std::vector<int>>(market.n_arms(), market.arm_ranking());
}

Matching stable_matching_serial(const MarketInstance& market) {
  Matching m{std::vector<int>(market.n_players(), kUnmatched)};
  std::vector<char> taken(market.n_arms(), 0);
  for (int player : market.arm_ranking()) {
    const auto row = market.row(player);
    int best = kUnmatched;
    for (int k = 0; k < market.n_arms(); ++k) {
      if (!taken[k] && (best == kUnmatched || row[k] > row[best])) best = k;
    }
    m.arm_of[player] = best;
    taken[best] = 1;
  }
  return m;
}

Matching gale_shapley(const std::vector<std::vector<int>>& player_prefs,
                      const std::vector<std::vector<int>>& arm_prefs) {
  const int n = static_cast<int>(player_prefs.size());
  const int k = static_cast<int>(arm_prefs.size());
  for (int i = 0; i < n; ++i) {
    if (!is_permutation_of_range(player_prefs[i], k)) {
      throw ConfigError(fmt::format(
          "preference list of player {} is not a permutation of {} arms",
          i + 1, k));
    }
  }
  for (int a = 0; a < k; ++a) {
    if (!is_permutation_of_range(arm_prefs[a], n)) {
      throw ConfigError(fmt::format(
          "preference list of arm {} is not a permutation of {} players",
          a + 1, n));
    }
  }
  // rank[a][p]: position of player p in arm a's list.
  std::vector<std::vector<int>> rank(k, std::vector<int>(n));
  for (int a = 0; a < k; ++a) {
    for (int pos = 0; pos < n; ++pos) rank[a][arm_prefs[a][pos]] = pos;
  }
  std::vector<int> holder(k, kUnmatched);
  std::vector<int> next(n, 0);
  std::vector<int> free_players;
  for (int i = n - 1; i >= 0; --i) free_players.push_back(i);
  while (!free_players.empty()) {
    const int p = free_players.back();
    if (next[p] >= k) {  // exhausted: stays unmatched (only when N > K)
      free_players.pop_back();
      continue;
    }
    const int a = player_prefs[p][next[p]++];
    if (holder[a] == kUnmatched) {
      holder[a] = p;
      free_players.pop_back();
    } else if (rank[a][p] < rank[a][holder[a]]) {
      free_players.back() = holder[a];
      holder[a] = p;
    }
  }
  Matching m{std::vector<int>(n, kUnmatched)};
  for (int a = 0; a < k; ++a) {
    if (holder[a] != kUnmatched) m.arm_of[holder[a]] = a;
  }
  return m;
}

std::vector<std::pair<int, int>> blocking_pairs(const MarketInstance& market,
                                                const Matching& matching) {
  std::vector<int> holder(market.n_arms(), kUnmatched);
  for (int i = 0; i < matching.n_players(); ++i) {
    if (matching.arm_of[i] != kUnmatched) holder[matching.arm_of[i]] = i;
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < market.n_players(); ++i) {
    const int current = matching.arm_of[i];
    const double current_utility =
        current == kUnmatched ? 0.0 : market.utility(i, current);
    for (int k = 0; k < market.n_arms(); ++k) {
      if (!(market.utility(i, k) > current_utility)) continue;
      if (holder[k] == kUnmatched || market.arm_prefers(i, holder[k])) {
        pairs.emplace_back(i, k);
      }
    }
  }
  return pairs;
}

}  // namespace mlss
