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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "mlss/error.h"
#include "mlss/market_io.h"

#ifndef MLSS_VERSION
#define MLSS_VERSION "unknown"
#endif

namespace mlss {
namespace {

using nlohmann::json;

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

PolicySpec policy_from_json(const json& j) {
  PolicySpec spec;
  if (j.is_string()) {
    spec.tag = j.get<std::string>();
    return spec;
  }
  if (!j.is_object()) throw ConfigError("policy must be a tag or an object");
  spec.tag = j.at("tag").get<std::string>();
  if (j.contains("phase_length_override") && !j["phase_length_override"].is_null()) {
    spec.phase_length_override = j["phase_length_override"].get<int>();
  }
  if (j.contains("h") && !j["h"].is_null()) spec.etc_h = j["h"].get<int>();
  return spec;
}

json policy_to_json(const PolicySpec& spec) {
  json j = {{"tag", spec.tag}};
  j["phase_length_override"] =
      spec.phase_length_override ? json(*spec.phase_length_override) : json(nullptr);
  j["h"] = spec.etc_h ? json(*spec.etc_h) : json(nullptr);
  return j;
}

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

// Sample standard deviation; 0 for a single value.
Moments moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return m;
}

json moments_json(const std::vector<double>& xs) {
  const Moments m = moments(xs);
  return {{"mean", m.mean}, {"stddev", m.stddev}};
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", tm.tm_year + 1900,
                     tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
}

EpisodeResult run_seed(const ExperimentConfig& config, const MarketInstance& market,
                       std::uint64_t seed) {
  auto policy = make_policy(config.policy, market, config.horizon, seed);
  const Trace trace =
      run_episode(market, *policy, config.horizon, seed, config.reward, config.policy.tag);
  const RegretSeries regret = stable_regret(trace, market);

  EpisodeResult r;
  r.seed = seed;
  for (int i = 0; i < market.n_players(); ++i) r.final_regret.push_back(regret.final_regret(i));
  r.total_regret = regret.final_total();
  r.protocol_errors = trace.protocol_errors;
  r.heatmap = heatmap_bins(trace, config.heatmap_bin_width);

  std::ostringstream regret_out;
  write_regret_csv(regret_out, regret);
  r.regret_csv = std::move(regret_out).str();
  std::ostringstream heat_out;
  write_heatmap_csv(heat_out, r.heatmap);
  r.heatmap_csv = std::move(heat_out).str();
  if (config.write_traces) {
    std::ostringstream trace_out;
    write_trace_csv(trace_out, trace);
    r.trace_csv = std::move(trace_out).str();
  }
  return r;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write {}", path.string()));
  out << content;
  out.close();
  if (!out) throw IoError(fmt::format("failed writing {}", path.string()));
}

}  // namespace

MarketInstance ExperimentConfig::resolve_market() const {
  if (market) return *market;
  if (generator) {
    return generate_market(generator->n_players, generator->n_arms, generator->min_gap,
                           generator->seed);
  }
  throw ConfigError("config has no market");
}

void ExperimentConfig::validate() const {
  if (market.has_value() == generator.has_value()) {
    throw ConfigError("config needs exactly one of an inline market or a generator");
  }
  if (!is_known_policy_tag(policy.tag)) {
    throw ConfigError(fmt::format("unknown policy tag '{}'", policy.tag));
  }
  if (seeds.empty()) throw ConfigError("seeds must be nonempty");
  if (heatmap_bin_width < 1) throw ConfigError("heatmap_bin_width must be >= 1");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  const int n = market ? market->n_players() : generator->n_players;
  if (horizon < std::max(n, 1)) {
    throw ConfigError(fmt::format("horizon {} must be >= number of players {}", horizon, n));
  }
}

json ExperimentConfig::to_json() const {
  json j;
  if (market) {
    j["market"] = json::parse(market_to_json(*market));
  } else if (generator) {
    j["market"] = {{"generator",
                    {{"n_players", generator->n_players},
                     {"n_arms", generator->n_arms},
                     {"min_gap", generator->min_gap},
                     {"seed", generator->seed}}}};
  }
  j["policy"] = policy_to_json(policy);
  j["horizon"] = horizon;
  j["seeds"] = seeds;
  j["reward"] = std::string(reward_family_name(reward));
  j["output_dir"] = output_dir.string();
  j["heatmap_bin_width"] = heatmap_bin_width;
  j["write_traces"] = write_traces;
  j["threads"] = threads;
  return j;
}

ExperimentConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
  ExperimentConfig c;
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    const json& m = j.at("market");
    if (m.is_string()) {
      std::filesystem::path p = m.get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      c.market = load_market(p);
    } else if (m.is_object() && m.contains("generator")) {
      const json& g = m.at("generator");
      c.generator = MarketGenerator{g.at("n_players").get<int>(), g.at("n_arms").get<int>(),
                                    g.at("min_gap").get<double>(),
                                    get_or<std::uint64_t>(g, "seed", 0)};
    } else {
      c.market = market_from_json(m);
    }
    if (j.contains("policy")) c.policy = policy_from_json(j.at("policy"));
    c.horizon = j.at("horizon").get<std::int64_t>();
    c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    c.reward = parse_reward_family(get_or<std::string>(j, "reward", "gaussian"));
    c.output_dir = get_or<std::string>(j, "output_dir", "out");
    c.heatmap_bin_width = get_or<int>(j, "heatmap_bin_width", 1000);
    c.write_traces = get_or<bool>(j, "write_traces", false);
    c.threads = get_or<int>(j, "threads", 0);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("bad config: {}", e.what()));
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot read config {}", path.string()));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("bad config {}: {}", path.string(), e.what()));
  }
  return config_from_json(j, path.parent_path());
}

ExperimentConfig figure1_preset() {
  ExperimentConfig c;
  c.generator = MarketGenerator{3, 5, 0.05, kFigure1MarketSeed};
  c.policy.tag = "mlss-elim";
  c.horizon = 100000;
  for (std::uint64_t s = 1; s <= 10; ++s) c.seeds.push_back(s);
  c.output_dir = "out/figure1";
  c.heatmap_bin_width = 1000;
  return c;
}

std::string version_string() { return MLSS_VERSION; }

ExperimentResult simulate(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result{config.resolve_market(), {}, {}, {}};
  result.stable = stable_matching_serial(result.market);
  // Surface configuration errors before spawning workers.
  make_policy(config.policy, result.market, config.horizon, config.seeds.front());

  const std::size_t jobs = config.seeds.size();
  result.episodes.resize(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      try {
        result.episodes[j] = run_seed(config, result.market, config.seeds[j]);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };
  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const int n = result.market.n_players();
  json per_player = json::array();
  for (int i = 0; i < n; ++i) {
    std::vector<double> xs;
    for (const auto& ep : result.episodes) xs.push_back(ep.final_regret[i]);
    per_player.push_back(moments_json(xs));
  }
  std::vector<double> totals;
  int protocol_errors = 0;
  for (const auto& ep : result.episodes) {
    totals.push_back(ep.total_regret);
    protocol_errors += ep.protocol_errors;
  }
  json& s = result.summary;
  s["version"] = version_string();
  s["policy"] = config.policy.tag;
  s["horizon"] = config.horizon;
  s["seeds"] = config.seeds;
  s["market_digest"] = market_digest(result.market);
  s["market"] = json::parse(market_to_json(result.market));
  std::vector<int> stable_1based;
  for (int a : result.stable.arm_of) stable_1based.push_back(a + 1);
  s["stable_matching"] = stable_1based;
  s["reward"] = std::string(reward_family_name(config.reward));
  s["final_regret"] = {{"per_player", per_player}, {"total", moments_json(totals)}};
  s["protocol_errors"] = protocol_errors;
  s["config"] = config.to_json();
  s["timestamp"] = utc_timestamp();
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec || !std::filesystem::is_directory(config.output_dir)) {
    throw IoError(fmt::format("cannot create output directory {}: {}",
                              config.output_dir.string(), ec.message()));
  }
  ExperimentResult result = simulate(config);
  for (const auto& ep : result.episodes) {
    write_file(config.output_dir / fmt::format("regret_seed{}.csv", ep.seed), ep.regret_csv);
    write_file(config.output_dir / fmt::format("heatmap_seed{}.csv", ep.seed), ep.heatmap_csv);
    if (config.write_traces) {
      write_file(config.output_dir / fmt::format("trace_seed{}.csv", ep.seed), ep.trace_csv);
    }
  }
  write_file(config.output_dir / "summary.json", result.summary.dump(2) + "\n");
  return result;
}

}  // namespace mlss
