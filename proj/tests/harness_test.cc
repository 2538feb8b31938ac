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

#include "mlss/harness.h"

#include <sstream>

#include <gtest/gtest.h>

#include "mlss/baselines.h"
#include "mlss/error.h"
#include "mlss/mlss_player.h"

namespace mlss {
namespace {

// Plays a fixed script of actions.
class ScriptPolicy : public Policy {
 public:
  ScriptPolicy(int n, int k, std::vector<std::vector<Action>> script)
      : n_(n), k_(k), script_(std::move(script)) {}
  int n_players() const override { return n_; }
  int n_arms() const override { return k_; }
  InfoModel info_model() const override { return InfoModel::kCollisionOnly; }
  std::vector<Action> act(std::int64_t round) override {
    return script_[(round - 1) % script_.size()];
  }
  void observe(std::span<const Observation>) override {}

 private:
  int n_, k_;
  std::vector<std::vector<Action>> script_;
};

const Action kA = Action::abstain();
Action P(int arm) { return Action::propose(arm); }

std::string to_csv(auto writer, const auto& value) {
  std::ostringstream out;
  writer(out, value);
  return out.str();
}

TEST(RunEpisodeTest, OracleMatchesStableEveryRound) {
  const MarketInstance m = generate_market(3, 5, 0.0, 1);
  OraclePolicy oracle(m);
  const Trace tr = run_episode(m, oracle, 100, 7, RewardFamily::kGaussian, "oracle");
  EXPECT_EQ(tr.actions.size(), 300u);
  EXPECT_EQ(tr.matched.size(), 300u);
  EXPECT_EQ(tr.rewards.size(), 300u);
  EXPECT_EQ(tr.policy_tag, "oracle");
  EXPECT_EQ(tr.seed, 7u);
  const Matching stable = stable_matching_serial(m);
  for (std::int64_t t = 1; t <= 100; ++t) {
    for (int i = 0; i < 3; ++i) EXPECT_EQ(tr.matched_arm(t, i), stable.arm_of[i]);
  }
}

TEST(RunEpisodeTest, DimensionMismatch) {
  const MarketInstance m = generate_market(3, 5, 0.0, 1);
  const MarketInstance other = generate_market(2, 5, 0.0, 1);
  OraclePolicy oracle(other);
  EXPECT_THROW(run_episode(m, oracle, 10, 1), ConfigError);
}

TEST(RunEpisodeTest, Deterministic) {
  const MarketInstance m = generate_market(3, 5, 0.05, 1);
  auto run = [&] {
    MlssConfig c;
    c.horizon = 3000;
    MlssPolicy p(3, 5, c);
    const Trace tr = run_episode(m, p, 3000, 11);
    return to_csv(write_trace_csv, tr);
  };
  EXPECT_EQ(run(), run());
}

TEST(RunEpisodeTest, NoiselessMlssExample) {
  const MarketInstance m(2, 2, {0.9, 0.5, 0.8, 0.2});
  MlssConfig c;
  c.horizon = 20000;
  MlssPolicy p(2, 2, c);
  const Trace tr = run_episode(m, p, 20000, 1, RewardFamily::kDeterministic);
  EXPECT_EQ(tr.matched_arm(20000, 0), 0);
  EXPECT_EQ(tr.matched_arm(20000, 1), 1);
}

TEST(StableRegretTest, Examples) {
  const MarketInstance m(2, 2, {0.9, 0.5, 0.8, 0.2});
  // p1 always on its stable arm; p2 always abstains.
  ScriptPolicy always(2, 2, {{P(0), kA}});
  Trace tr = run_episode(m, always, 10, 1);
  RegretSeries r = stable_regret(tr, m);
  EXPECT_EQ(r.final_regret(0), 0.0);
  EXPECT_NEAR(r.final_regret(1), 10 * 0.2, 1e-12);

  // p2 grabs a1 while p1 is elsewhere: increment 0.2 - 0.8.
  ScriptPolicy swap(2, 2, {{P(1), P(0)}});
  tr = run_episode(m, swap, 1, 1);
  r = stable_regret(tr, m);
  EXPECT_NEAR(r.cumulative[1][0], -0.6, 1e-12);
  EXPECT_NEAR(r.cumulative[0][0], 0.4, 1e-12);

  const MarketInstance m1(1, 2, {0.9, 0.1});
  ScriptPolicy idle(1, 2, {{kA}});
  tr = run_episode(m1, idle, 10, 1);
  EXPECT_NEAR(stable_regret(tr, m1).final_regret(0), 9.0, 1e-12);
}

TEST(StableRegretTest, MatchesBruteForceRecount) {
  const MarketInstance m = generate_market(3, 5, 0.05, 5);
  MlssConfig c;
  c.horizon = 4000;
  MlssPolicy p(3, 5, c);
  const Trace tr = run_episode(m, p, 4000, 2);
  const RegretSeries r = stable_regret(tr, m);
  const Matching stable = stable_matching_serial(m);
  for (int i = 0; i < 3; ++i) {
    double acc = 0.0;
    for (std::int64_t t = 1; t <= 4000; ++t) {
      const int a = tr.matched_arm(t, i);
      const double inc = m.utility(i, stable.arm_of[i]) - (a < 0 ? 0.0 : m.utility(i, a));
      EXPECT_LE(inc, m.utility(i, stable.arm_of[i]));
      acc += inc;
      ASSERT_NEAR(r.cumulative[i][t - 1], acc, 1e-9);
    }
  }
}

TEST(HeatmapTest, CountingIdentity) {
  const MarketInstance m = generate_market(2, 3, 0.0, 5);
  ScriptPolicy s(2, 3, {{P(0), P(1)}, {kA, P(2)}, {P(2), kA}});
  const Trace tr = run_episode(m, s, 3000, 1);
  const Heatmap h = heatmap_bins(tr, 1000);
  EXPECT_EQ(h.n_bins, 3);
  for (int b = 0; b < 3; ++b) {
    for (int i = 0; i < 2; ++i) {
      std::int64_t total = 0, abstains = 0;
      for (int k = 0; k < 3; ++k) total += h.count(b, i, k);
      for (std::int64_t t = b * 1000 + 1; t <= (b + 1) * 1000; ++t) {
        abstains += tr.action(t, i) == Action::kAbstain ? 1 : 0;
      }
      EXPECT_EQ(total, 1000 - abstains);
    }
  }
}

TEST(HeatmapTest, PartialLastBinAndErrors) {
  const MarketInstance m = generate_market(1, 2, 0.0, 5);
  ScriptPolicy s(1, 2, {{P(1)}});
  const Trace tr = run_episode(m, s, 2500, 1);
  const Heatmap h = heatmap_bins(tr, 1000);
  EXPECT_EQ(h.n_bins, 3);
  EXPECT_EQ(h.count(2, 0, 1), 500);
  EXPECT_THROW(heatmap_bins(tr, 0), ConfigError);
  EXPECT_EQ(convergence_bin(h, 2500, 0, 1), 0);
  EXPECT_EQ(convergence_bin(h, 2500, 0, 0), std::nullopt);
  EXPECT_DOUBLE_EQ(proposal_share(h, 0, 1, 0, 3), 1.0);
}

TEST(HeatmapTest, OracleSaturatesStableColumn) {
  const MarketInstance m = generate_market(3, 5, 0.0, 9);
  OraclePolicy oracle(m);
  const Trace tr = run_episode(m, oracle, 5000, 1);
  const Heatmap h = heatmap_bins(tr, 1000);
  const Matching stable = stable_matching_serial(m);
  for (int b = 0; b < 5; ++b) {
    for (int i = 0; i < 3; ++i) EXPECT_EQ(h.count(b, i, stable.arm_of[i]), 1000);
  }
}

TEST(HeatmapTest, Figure1Dimensions) {
  const MarketInstance m = generate_market(3, 5, 0.05, 1);
  OraclePolicy oracle(m);
  const Trace tr = run_episode(m, oracle, 100000, 1);
  const Heatmap h = heatmap_bins(tr, 1000);
  EXPECT_EQ(h.n_bins, 100);
  EXPECT_EQ(h.counts.size(), 100u * 3 * 5);
  const std::string csv = to_csv(write_heatmap_csv, h);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 1500);
}

TEST(GeometricRoundsTest, Shape) {
  EXPECT_EQ(geometric_rounds(5, 10), (std::vector<std::int64_t>{1, 2, 3, 4, 5}));
  const auto r = geometric_rounds(100000, 666);
  EXPECT_LE(r.size(), 667u);
  EXPECT_EQ(r.front(), 1);
  EXPECT_EQ(r.back(), 100000);
  EXPECT_TRUE(std::is_sorted(r.begin(), r.end()));
  EXPECT_EQ(std::adjacent_find(r.begin(), r.end()), r.end());
}

TEST(CsvTest, TraceFormat) {
  const MarketInstance m(2, 2, {0.9, 0.5, 0.8, 0.2});
  ScriptPolicy s(2, 2, {{P(0), P(0)}, {kA, P(1)}});
  const Trace tr = run_episode(m, s, 2, 1, RewardFamily::kDeterministic);
  EXPECT_EQ(to_csv(write_trace_csv, tr),
            "round,player,action,matched_arm,reward\n"
            "1,1,1,1,0.90000000000000002\n"
            "1,2,1,-,0\n"
            "2,1,-,-,0\n"
            "2,2,2,2,0.20000000000000001\n");
}

TEST(CsvTest, RegretRowsBounded) {
  const MarketInstance m = generate_market(3, 5, 0.0, 1);
  RandomPolicy rnd(3, 5, 1);
  const Trace tr = run_episode(m, rnd, 50000, 1);
  const std::string csv = to_csv(
      [](std::ostream& o, const RegretSeries& r) { write_regret_csv(o, r); },
      stable_regret(tr, m));
  const auto rows = std::count(csv.begin(), csv.end(), '\n') - 1;
  EXPECT_LE(rows, 2000);
  EXPECT_GT(rows, 1000);
  EXPECT_EQ(csv.rfind("round,player,cum_regret\n", 0), 0u);
  EXPECT_NE(csv.find("\n50000,3,"), std::string::npos);
}

TEST(SublinearityTest, DoublingHorizonLessThanDoublesRegret) {
  const MarketInstance m(2, 4, {1.0, 0.45, 0.25, 0.05, 0.25, 1.0, 0.45, 0.05});
  auto mean_regret = [&](std::int64_t t) {
    double sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      MlssConfig c;
      c.horizon = t;
      MlssPolicy p(2, 4, c);
      sum += stable_regret(run_episode(m, p, t, seed), m).final_total();
    }
    return sum / 20.0;
  };
  const double r14 = mean_regret(1 << 14);
  const double r15 = mean_regret(1 << 15);
  const double r16 = mean_regret(1 << 16);
  EXPECT_LE(r14, r15);
  EXPECT_LE(r15, r16);
  EXPECT_LT(r15 / r14, 1.8);
  EXPECT_LT(r16 / r15, 1.8);
}

}  // namespace
}  // namespace mlss
