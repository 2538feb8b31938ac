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

#include "mlss/experiment.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "mlss/error.h"
#include "mlss/market_io.h"

namespace mlss {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("mlss_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

json small_config() {
  return json::parse(R"({
    "market": {"utilities": [[0.9, 0.5, 0.1], [0.8, 0.2, 0.6]]},
    "policy": "mlss-elim",
    "horizon": 3000,
    "seeds": [1, 2, 3, 4],
    "heatmap_bin_width": 500
  })");
}

TEST(ConfigTest, ParsesInlineMarket) {
  const ExperimentConfig c = config_from_json(small_config());
  ASSERT_TRUE(c.market.has_value());
  EXPECT_EQ(c.market->n_players(), 2);
  EXPECT_EQ(c.policy.tag, "mlss-elim");
  EXPECT_EQ(c.horizon, 3000);
  EXPECT_EQ(c.seeds.size(), 4u);
  EXPECT_EQ(c.reward, RewardFamily::kGaussian);
  EXPECT_EQ(c.heatmap_bin_width, 500);
  EXPECT_FALSE(c.write_traces);
}

TEST(ConfigTest, ParsesGeneratorAndPolicyObject) {
  json j = small_config();
  j["market"] = json::parse(
      R"({"generator": {"n_players": 3, "n_arms": 5, "min_gap": 0.05, "seed": 4}})");
  j["policy"] = json::parse(R"({"tag": "etc", "h": 7})");
  j["reward"] = "bernoulli";
  const ExperimentConfig c = config_from_json(j);
  ASSERT_TRUE(c.generator.has_value());
  EXPECT_EQ(c.resolve_market(), generate_market(3, 5, 0.05, 4));
  EXPECT_EQ(c.policy.etc_h, 7);
  EXPECT_EQ(c.reward, RewardFamily::kBernoulli);
}

TEST(ConfigTest, MarketFileRelativeToConfig) {
  const fs::path dir = scratch_dir("relmarket");
  fs::create_directories(dir);
  const MarketInstance m = generate_market(2, 3, 0.0, 3);
  std::ofstream(dir / "m.json") << market_to_json(m);
  json j = small_config();
  j["market"] = "m.json";
  std::ofstream(dir / "c.json") << j.dump();
  EXPECT_EQ(load_config(dir / "c.json").resolve_market(), m);
}

TEST(ConfigTest, Rejections) {
  auto bad = [](auto edit) {
    json j = small_config();
    edit(j);
    return j;
  };
  EXPECT_THROW(config_from_json(bad([](json& j) { j["seeds"] = json::array(); })), ConfigError);
  EXPECT_THROW(config_from_json(bad([](json& j) { j["horizon"] = 1; })), ConfigError);
  EXPECT_THROW(config_from_json(bad([](json& j) { j["policy"] = "ucb-d4"; })), ConfigError);
  EXPECT_THROW(config_from_json(bad([](json& j) { j["reward"] = "cauchy"; })), ConfigError);
  EXPECT_THROW(config_from_json(bad([](json& j) { j["heatmap_bin_width"] = 0; })),
               ConfigError);
  EXPECT_THROW(config_from_json(bad([](json& j) { j.erase("horizon"); })), ConfigError);
  EXPECT_THROW(config_from_json(bad([](json& j) { j["horizon"] = "long"; })), ConfigError);
  EXPECT_THROW(config_from_json(bad([](json& j) {
                 j["market"] = json::parse(R"({"utilities": [[0.5, 0.5]]})");
               })),
               MarketError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), IoError);
}

TEST(ConfigTest, Figure1Preset) {
  const ExperimentConfig c = figure1_preset();
  const MarketInstance m = c.resolve_market();
  EXPECT_EQ(m.n_players(), 3);
  EXPECT_EQ(m.n_arms(), 5);
  EXPECT_GE(min_gap(m), 0.05);
  EXPECT_EQ(c.horizon, 100000);
  EXPECT_EQ(c.seeds.size(), 10u);
  EXPECT_EQ(c.heatmap_bin_width, 1000);
  EXPECT_EQ(c.policy.tag, "mlss-elim");
}

TEST(ConfigTest, JsonEcho) {
  const ExperimentConfig c = config_from_json(small_config());
  const ExperimentConfig again = config_from_json(c.to_json());
  EXPECT_EQ(again.to_json(), c.to_json());
}

TEST(SimulateTest, ParallelEqualsSequential) {
  ExperimentConfig c = config_from_json(small_config());
  c.write_traces = true;
  c.threads = 1;
  const ExperimentResult seq = simulate(c);
  c.threads = 4;
  const ExperimentResult par = simulate(c);
  ASSERT_EQ(seq.episodes.size(), par.episodes.size());
  for (std::size_t i = 0; i < seq.episodes.size(); ++i) {
    EXPECT_EQ(seq.episodes[i].seed, c.seeds[i]);
    EXPECT_EQ(seq.episodes[i].seed, par.episodes[i].seed);
    EXPECT_EQ(seq.episodes[i].trace_csv, par.episodes[i].trace_csv);
    EXPECT_EQ(seq.episodes[i].regret_csv, par.episodes[i].regret_csv);
    EXPECT_EQ(seq.episodes[i].heatmap_csv, par.episodes[i].heatmap_csv);
  }
  json a = seq.summary, b = par.summary;
  a.erase("timestamp");
  b.erase("timestamp");
  a["config"].erase("threads");
  b["config"].erase("threads");
  EXPECT_EQ(a, b);
}

TEST(SimulateTest, OracleSummaryIsZero) {
  json j = small_config();
  j["policy"] = "oracle";
  j["seeds"] = {7};
  const ExperimentResult r = simulate(config_from_json(j));
  EXPECT_EQ(r.summary["final_regret"]["total"]["mean"], 0.0);
  EXPECT_EQ(r.summary["final_regret"]["total"]["stddev"], 0.0);
}

TEST(RunExperimentTest, WritesFiles) {
  const fs::path dir = scratch_dir("files");
  json j = small_config();
  j["output_dir"] = dir.string();
  j["write_traces"] = true;
  const ExperimentConfig c = config_from_json(j);
  run_experiment(c);
  for (std::uint64_t s : c.seeds) {
    EXPECT_TRUE(fs::exists(dir / ("regret_seed" + std::to_string(s) + ".csv")));
    EXPECT_TRUE(fs::exists(dir / ("heatmap_seed" + std::to_string(s) + ".csv")));
    EXPECT_TRUE(fs::exists(dir / ("trace_seed" + std::to_string(s) + ".csv")));
  }
  const std::string heat = slurp(dir / "heatmap_seed1.csv");
  EXPECT_EQ(heat.rfind("bin,player,arm,count\n", 0), 0u);
  // 6 bins x 2 players x 3 arms.
  EXPECT_EQ(std::count(heat.begin(), heat.end(), '\n'), 1 + 36);

  const json summary = json::parse(slurp(dir / "summary.json"));
  for (const char* key : {"version", "policy", "horizon", "seeds", "market_digest", "market",
                          "final_regret", "protocol_errors", "config", "timestamp"}) {
    EXPECT_TRUE(summary.contains(key)) << key;
  }
  EXPECT_EQ(summary["final_regret"]["per_player"].size(), 2u);
  EXPECT_EQ(summary["market_digest"], market_digest(*c.market));
  EXPECT_EQ(summary["stable_matching"], (json{1, 3}));
}

TEST(RunExperimentTest, RerunIsIdenticalModuloTimestamp) {
  json j = small_config();
  j["output_dir"] = scratch_dir("rerun_a").string();
  run_experiment(config_from_json(j));
  json first = json::parse(slurp(fs::path(j["output_dir"].get<std::string>()) / "summary.json"));
  run_experiment(config_from_json(j));
  json second = json::parse(slurp(fs::path(j["output_dir"].get<std::string>()) / "summary.json"));
  first.erase("timestamp");
  second.erase("timestamp");
  EXPECT_EQ(first, second);
}

TEST(RunExperimentTest, UnwritableDirectory) {
  const fs::path blocker = scratch_dir("blocker");
  std::ofstream(blocker) << "not a directory";
  json j = small_config();
  j["output_dir"] = (blocker / "out").string();
  EXPECT_THROW(run_experiment(config_from_json(j)), IoError);
}

}  // namespace
}  // namespace mlss
