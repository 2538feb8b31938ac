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

#include "mlss/arm_stats.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace mlss {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

ArmEstimate update_stats(ArmEstimate entry, double reward) {
  const auto n = static_cast<double>(entry.pulls);
  entry.mean = (entry.mean * n + reward) / (n + 1.0);
  ++entry.pulls;
  return entry;
}

void ArmStats::update(int arm, double reward) {
  arms_[arm] = update_stats(arms_[arm], reward);
}

double confidence_radius(std::int64_t pulls, double ln_horizon) {
  if (pulls == 0) return kInf;
  return 2.0 * std::sqrt(2.0 * ln_horizon / static_cast<double>(pulls));
}

ConfidenceBounds confidence_bounds(const ArmEstimate& entry, double ln_horizon) {
  if (entry.pulls == 0) return {kInf, -kInf};
  const double r = confidence_radius(entry.pulls, ln_horizon);
  return {entry.mean + r, entry.mean - r};
}

std::vector<ConfidenceBounds> all_bounds(const ArmStats& stats, double ln_horizon) {
  std::vector<ConfidenceBounds> bounds;
  bounds.reserve(stats.n_arms());
  for (const auto& e : stats.entries()) bounds.push_back(confidence_bounds(e, ln_horizon));
  return bounds;
}

EliminationResult elimination_select(std::span<const int> candidates,
                                     std::span<const ConfidenceBounds> bounds,
                                     std::span<const std::int64_t> pulls) {
  assert(!candidates.empty());
  double best_lcb = -kInf;
  for (int k : candidates) best_lcb = std::max(best_lcb, bounds[k].lcb);

  EliminationResult result{-1, {}};
  for (int k : candidates) {
    // Some other candidate's LCB beats this UCB. The max-LCB arm can never
    // qualify since its own LCB <= its UCB.
    if (best_lcb > bounds[k].ucb) {
      result.newly_eliminated.push_back(k);
      continue;
    }
    if (result.arm < 0 || pulls[k] < pulls[result.arm] ||
        (pulls[k] == pulls[result.arm] && k < result.arm)) {
      result.arm = k;
    }
  }
  assert(result.arm >= 0);
  return result;
}

EliminationResult elimination_select(std::span<const int> candidates,
                                     const ArmStats& stats, double ln_horizon) {
  const auto bounds = all_bounds(stats, ln_horizon);
  std::vector<std::int64_t> pulls;
  pulls.reserve(stats.n_arms());
  for (const auto& e : stats.entries()) pulls.push_back(e.pulls);
  return elimination_select(candidates, bounds, pulls);
}

int ucb_select(std::span<const int> candidates, std::span<const double> ucb) {
  assert(!candidates.empty());
  int best = -1;
  for (int k : candidates) {
    if (best < 0 || ucb[k] > ucb[best] || (ucb[k] == ucb[best] && k < best)) {
      best = k;
    }
  }
  return best;
}

int ucb_select(std::span<const int> candidates, const ArmStats& stats,
               double ln_horizon) {
  std::vector<double> ucb;
  ucb.reserve(stats.n_arms());
  for (const auto& e : stats.entries()) ucb.push_back(confidence_bounds(e, ln_horizon).ucb);
  return ucb_select(candidates, ucb);
}

}  // namespace mlss
