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

// Per-arm empirical means, confidence bounds and the two arm-selection
// subroutines (successive elimination and UCB).

#ifndef MLSS_ARM_STATS_H_
#define MLSS_ARM_STATS_H_

#include <cstdint>
#include <span>
#include <vector>

namespace mlss {

struct ArmEstimate {
  double mean = 0.0;  // meaningless while pulls == 0
  std::int64_t pulls = 0;
};

struct ConfidenceBounds {
  double ucb;
  double lcb;
};

class ArmStats {
 public:
  explicit ArmStats(int n_arms = 0) : arms_(n_arms) {}

  int n_arms() const { return static_cast<int>(arms_.size()); }
  const ArmEstimate& operator[](int arm) const { return arms_[arm]; }
  std::span<const ArmEstimate> entries() const { return arms_; }

  // Incremental mean: mean <- (mean * n + reward) / (n + 1).
  void update(int arm, double reward);

 private:
  std::vector<ArmEstimate> arms_;
};

// Returns `entry` after folding in one more reward.
ArmEstimate update_stats(ArmEstimate entry, double reward);

// 2 * sqrt(2 ln T / n); +inf for n == 0.
double confidence_radius(std::int64_t pulls, double ln_horizon);

// mean +- confidence_radius; (+inf, -inf) for an unpulled arm.
ConfidenceBounds confidence_bounds(const ArmEstimate& entry, double ln_horizon);

std::vector<ConfidenceBounds> all_bounds(const ArmStats& stats, double ln_horizon);

struct EliminationResult {
  int arm;
  std::vector<int> newly_eliminated;
};

// Drops every candidate k for which some candidate k' has LCB_k' > UCB_k,
// then returns the least-pulled survivor (lowest index on ties).
// `bounds` and `pulls` are indexed by arm. `candidates` must be non-empty.
EliminationResult elimination_select(std::span<const int> candidates,
                                     std::span<const ConfidenceBounds> bounds,
                                     std::span<const std::int64_t> pulls);
EliminationResult elimination_select(std::span<const int> candidates,
                                     const ArmStats& stats, double ln_horizon);

// Candidate with the largest UCB, lowest index on ties. `ucb` is indexed by
// arm. `candidates` must be non-empty.
int ucb_select(std::span<const int> candidates, std::span<const double> ucb);
int ucb_select(std::span<const int> candidates, const ArmStats& stats,
               double ln_horizon);

}  // namespace mlss

#endif  // MLSS_ARM_STATS_H_
