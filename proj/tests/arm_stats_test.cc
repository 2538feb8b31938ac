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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "mlss/rng.h"

namespace mlss {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(UpdateStatsTest, Examples) {
  ArmEstimate e = update_stats({0.5, 2}, 0.8);
  EXPECT_DOUBLE_EQ(e.mean, 0.6);
  EXPECT_EQ(e.pulls, 3);
  e = update_stats({0.0, 0}, 0.7);
  EXPECT_DOUBLE_EQ(e.mean, 0.7);
  EXPECT_EQ(e.pulls, 1);
  e = update_stats({1.0, 4}, 1.0);
  EXPECT_DOUBLE_EQ(e.mean, 1.0);
  EXPECT_EQ(e.pulls, 5);
}

TEST(UpdateStatsTest, OnlyNamedArmChanges) {
  ArmStats s(3);
  s.update(1, 0.4);
  EXPECT_EQ(s[0].pulls, 0);
  EXPECT_EQ(s[1].pulls, 1);
  EXPECT_EQ(s[2].pulls, 0);
}

TEST(UpdateStatsTest, MatchesStoredSumOracle) {
  CounterRng rng(1, StreamTag::kTest);
  ArmStats s(4);
  std::vector<double> sum(4, 0.0);
  std::vector<int> count(4, 0);
  for (int step = 0; step < 20000; ++step) {
    const int arm = static_cast<int>(rng.below(4));
    const double x = 0.25 * arm + rng.normal();
    s.update(arm, x);
    sum[arm] += x;
    ++count[arm];
  }
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(s[k].pulls, count[k]);
    EXPECT_NEAR(s[k].mean, sum[k] / count[k], 1e-12);
  }
}

TEST(ConfidenceBoundsTest, Examples) {
  ConfidenceBounds b = confidence_bounds({0.5, 8}, 4.0);
  EXPECT_DOUBLE_EQ(b.ucb, 2.5);
  EXPECT_DOUBLE_EQ(b.lcb, -1.5);
  b = confidence_bounds({0.0, 0}, 4.0);
  EXPECT_EQ(b.ucb, kInf);
  EXPECT_EQ(b.lcb, -kInf);
  b = confidence_bounds({0.0, 2}, 1.0);
  EXPECT_DOUBLE_EQ(b.ucb, 2.0);
  EXPECT_DOUBLE_EQ(b.lcb, -2.0);
  EXPECT_EQ(confidence_radius(0, 3.0), kInf);
}

TEST(EliminationSelectTest, HandTrace) {
  // a1: LCB 0.6; a2: UCB 0.7; a3: UCB 0.5. Pulls a1:5, a2:3.
  const std::vector<ConfidenceBounds> bounds{{1.0, 0.6}, {0.7, 0.1}, {0.5, 0.2}};
  const std::vector<std::int64_t> pulls{5, 3, 4};
  const std::vector<int> cands{0, 1, 2};
  const EliminationResult r = elimination_select(cands, bounds, pulls);
  EXPECT_EQ(r.newly_eliminated, std::vector<int>{2});
  EXPECT_EQ(r.arm, 1);
}

TEST(EliminationSelectTest, UnpulledEliminatesNothing) {
  ArmStats s(3);
  const std::vector<int> cands{0, 1, 2};
  const EliminationResult r = elimination_select(cands, s, 5.0);
  EXPECT_TRUE(r.newly_eliminated.empty());
  EXPECT_EQ(r.arm, 0);
}

TEST(EliminationSelectTest, Singleton) {
  ArmStats s(3);
  s.update(2, 0.1);
  const std::vector<int> cands{2};
  const EliminationResult r = elimination_select(cands, s, 5.0);
  EXPECT_TRUE(r.newly_eliminated.empty());
  EXPECT_EQ(r.arm, 2);
}

TEST(EliminationSelectTest, OnlyCandidatesCanEliminate) {
  // a1 would beat a2, but a1 is not a candidate.
  const std::vector<ConfidenceBounds> bounds{{1.0, 0.9}, {0.5, 0.1}, {0.6, 0.2}};
  const std::vector<std::int64_t> pulls{9, 2, 3};
  const std::vector<int> cands{1, 2};
  const EliminationResult r = elimination_select(cands, bounds, pulls);
  EXPECT_TRUE(r.newly_eliminated.empty());
  EXPECT_EQ(r.arm, 1);
}

TEST(UcbSelectTest, Examples) {
  const std::vector<int> two{0, 1};
  EXPECT_EQ(ucb_select(two, std::vector<double>{0.9, 1.1}), 1);
  EXPECT_EQ(ucb_select(two, std::vector<double>{1.0, 1.0}), 0);
  ArmStats s(3);
  for (int i = 0; i < 5; ++i) {
    s.update(0, 0.9);
    s.update(1, 0.8);
  }
  const std::vector<int> three{0, 1, 2};
  EXPECT_EQ(ucb_select(three, s, 4.0), 2);
  const std::vector<int> restricted{1};
  EXPECT_EQ(ucb_select(restricted, s, 4.0), 1);
}

// Bounds of an arm whose empirical mean sits at mu + dev after n pulls.
ConfidenceBounds bounds_at(double mu, double dev, std::int64_t n, double ln_t) {
  return confidence_bounds({mu + dev, n}, ln_t);
}

TEST(ConfidenceOrderingTest, SeparatedBoundsOrderTrueMeans) {
  // If every mean is within the confidence radius of the truth, then
  // UCB_k < LCB_k' implies mu_k < mu_k'.
  CounterRng rng(2, StreamTag::kTest);
  int separated = 0;
  for (int trial = 0; trial < 200000; ++trial) {
    const double ln_t = 1.0 + 14.0 * rng.uniform();
    const double mu_a = rng.uniform_positive();
    const double mu_b = rng.uniform_positive();
    const auto na = static_cast<std::int64_t>(1 + rng.below(1 << 16));
    const auto nb = static_cast<std::int64_t>(1 + rng.below(1 << 16));
    // Deviations anywhere in [-r, r], endpoints included.
    auto dev = [&](std::int64_t n) {
      const double r = confidence_radius(n, ln_t);
      switch (rng.below(3)) {
        case 0: return -r;
        case 1: return r;
        default: return r * (2.0 * rng.uniform() - 1.0);
      }
    };
    const ConfidenceBounds a = bounds_at(mu_a, dev(na), na, ln_t);
    const ConfidenceBounds b = bounds_at(mu_b, dev(nb), nb, ln_t);
    if (a.ucb < b.lcb) {
      ++separated;
      EXPECT_LT(mu_a, mu_b);
    }
  }
  EXPECT_GT(separated, 1000);
}

// Worst case of LCB_best - UCB_worse when each mean is off by at most
// `dev_scale` * sqrt(2 ln T / n) in the unfavourable direction.
double worst_separation(double gap, double ln_t, std::int64_t n, double dev_scale) {
  const double d = dev_scale * std::sqrt(2.0 * ln_t / static_cast<double>(n));
  const ConfidenceBounds best = bounds_at(0.5 + gap, -d, n, ln_t);
  const ConfidenceBounds worse = bounds_at(0.5, +d, n, ln_t);
  return best.lcb - worse.ucb;
}

TEST(ObservationCountTest, SeparationWithGoodEventDeviations) {
  // Means within sqrt(2 ln T/n): separation once n > 72 ln T / gap^2.
  for (double gap : {0.05, 0.1, 0.2, 0.5}) {
    for (double ln_t : {2.0, 5.0, 10.0, 15.0}) {
      const auto n0 = static_cast<std::int64_t>(std::floor(72.0 * ln_t / (gap * gap) + 1e-9)) + 1;
      for (std::int64_t n : {n0, n0 + 1, 2 * n0, 10 * n0}) {
        EXPECT_GT(worst_separation(gap, ln_t, n, 1.0), 0.0)
            << "gap " << gap << " lnT " << ln_t << " n " << n;
      }
    }
  }
}

TEST(ObservationCountTest, SeparationWithConfidenceRadiusDeviations) {
  // Means within 2 sqrt(2 ln T/n): separation once n > 128 ln T / gap^2.
  for (double gap : {0.05, 0.1, 0.2, 0.5}) {
    for (double ln_t : {2.0, 5.0, 10.0, 15.0}) {
      const auto n0 = static_cast<std::int64_t>(std::floor(128.0 * ln_t / (gap * gap) + 1e-9)) + 1;
      for (std::int64_t n : {n0, 2 * n0, 10 * n0}) {
        EXPECT_GT(worst_separation(gap, ln_t, n, 2.0), 0.0);
      }
    }
  }
}

TEST(ObservationCountTest, ThirtyTwoThresholdIsNotSufficient) {
  // Just above 32 ln T / gap^2 the bounds can still overlap: with gap 0.2,
  // ln T = 10 and 8001 pulls each, LCB_best - UCB_worse is about -0.1.
  EXPECT_LT(worst_separation(0.2, 10.0, 8001, 1.0), -0.09);
  // The thresholds above are tight: just below them separation fails.
  EXPECT_LT(worst_separation(0.2, 10.0, 17999, 1.0), 0.0);
  EXPECT_LT(worst_separation(0.2, 10.0, 31999, 2.0), 0.0);
}

}  // namespace
}  // namespace mlss
