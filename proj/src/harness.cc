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

#include <algorithm>
#include <cmath>
#include <iterator>

#include <fmt/format.h>

#include "mlss/error.h"
#include "mlss/market_io.h"

namespace mlss {

Trace run_episode(const MarketInstance& market, Policy& policy, std::int64_t horizon,
                  std::uint64_t seed, RewardFamily family,
                  const std::string& policy_tag, const RoundHook& hook) {
  const int n = market.n_players();
  if (policy.n_players() != n || policy.n_arms() != market.n_arms()) {
    throw ConfigError(fmt::format("policy is {}x{} but market is {}x{}",
                                  policy.n_players(), policy.n_arms(), n,
                                  market.n_arms()));
  }
  if (horizon < 1) throw ConfigError("horizon must be >= 1");

  Trace trace;
  trace.n_players = n;
  trace.n_arms = market.n_arms();
  trace.horizon = horizon;
  trace.seed = seed;
  trace.policy_tag = policy_tag;
  trace.market_digest = market_digest(market);
  const auto cells = static_cast<std::size_t>(horizon) * n;
  trace.actions.reserve(cells);
  trace.matched.reserve(cells);
  trace.rewards.reserve(cells);

  const InfoModel model = policy.info_model();
  std::vector<Observation> obs(n);
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const std::vector<Action> actions = policy.act(t);
    if (static_cast<int>(actions.size()) != n) {
      throw ConfigError(fmt::format("policy returned {} actions for {} players",
                                    actions.size(), n));
    }
    MatchOutcome outcome = resolve_round(market, actions, t);
    sample_rewards(market, outcome, family, seed);
    for (int i = 0; i < n; ++i) {
      obs[i] = observe(outcome, i, model);
      trace.actions.push_back(actions[i].arm());
      trace.matched.push_back(outcome.matched[i]);
      trace.rewards.push_back(outcome.rewards[i]);
    }
    policy.observe(obs);
    if (hook) hook(outcome);
  }
  trace.protocol_errors = policy.protocol_errors();
  return trace;
}

double RegretSeries::final_total() const {
  double total = 0.0;
  for (std::size_t i = 0; i < cumulative.size(); ++i) {
    total += final_regret(static_cast<int>(i));
  }
  return total;
}

RegretSeries stable_regret(const Trace& trace, const MarketInstance& market) {
  const Matching stable = stable_matching_serial(market);
  RegretSeries series;
  series.cumulative.assign(trace.n_players, {});
  for (int i = 0; i < trace.n_players; ++i) {
    const double best = market.utility(i, stable.arm_of[i]);
    auto& curve = series.cumulative[i];
    curve.reserve(trace.horizon);
    double acc = 0.0;
    for (std::int64_t t = 1; t <= trace.horizon; ++t) {
      const int arm = trace.matched_arm(t, i);
      acc += best - (arm == kUnmatched ? 0.0 : market.utility(i, arm));
      curve.push_back(acc);
    }
  }
  return series;
}

Heatmap heatmap_bins(const Trace& trace, int bin_width) {
  if (bin_width < 1) throw ConfigError("heatmap bin width must be >= 1");
  Heatmap h;
  h.bin_width = bin_width;
  h.n_players = trace.n_players;
  h.n_arms = trace.n_arms;
  h.n_bins = static_cast<int>((trace.horizon + bin_width - 1) / bin_width);
  h.counts.assign(static_cast<std::size_t>(h.n_bins) * h.n_players * h.n_arms, 0);
  for (std::int64_t t = 1; t <= trace.horizon; ++t) {
    const auto bin = static_cast<std::size_t>((t - 1) / bin_width);
    for (int i = 0; i < trace.n_players; ++i) {
      const int arm = trace.action(t, i);
      if (arm == Action::kAbstain) continue;
      ++h.counts[(bin * h.n_players + i) * h.n_arms + arm];
    }
  }
  return h;
}

double proposal_share(const Heatmap& heatmap, int player, int arm, int first_bin,
                      int last_bin) {
  std::int64_t hits = 0;
  std::int64_t total = 0;
  for (int b = std::max(first_bin, 0); b < std::min(last_bin, heatmap.n_bins); ++b) {
    for (int k = 0; k < heatmap.n_arms; ++k) total += heatmap.count(b, player, k);
    hits += heatmap.count(b, player, arm);
  }
  return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
}

std::optional<int> convergence_bin(const Heatmap& heatmap, std::int64_t horizon,
                                   int player, int arm, double threshold) {
  for (int b = 0; b < heatmap.n_bins; ++b) {
    const std::int64_t first = static_cast<std::int64_t>(b) * heatmap.bin_width + 1;
    const std::int64_t rounds = std::min<std::int64_t>(heatmap.bin_width, horizon - first + 1);
    if (static_cast<double>(heatmap.count(b, player, arm)) >=
        threshold * static_cast<double>(rounds)) {
      return b;
    }
  }
  return std::nullopt;
}

std::vector<std::int64_t> geometric_rounds(std::int64_t horizon, int max_points) {
  std::vector<std::int64_t> rounds;
  if (horizon < 1 || max_points < 1) return rounds;
  if (horizon <= max_points) {
    for (std::int64_t t = 1; t <= horizon; ++t) rounds.push_back(t);
    return rounds;
  }
  if (max_points == 1) return {horizon};
  const double log_t = std::log(static_cast<double>(horizon));
  for (int j = 0; j < max_points; ++j) {
    const double x = std::exp(log_t * j / (max_points - 1));
    const auto t = std::clamp<std::int64_t>(std::llround(x), 1, horizon);
    if (rounds.empty() || t > rounds.back()) rounds.push_back(t);
  }
  if (rounds.back() != horizon) rounds.push_back(horizon);
  return rounds;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << "round,player,action,matched_arm,reward\n";
  fmt::memory_buffer buf;
  for (std::int64_t t = 1; t <= trace.horizon; ++t) {
    for (int i = 0; i < trace.n_players; ++i) {
      const int a = trace.action(t, i);
      const int m = trace.matched_arm(t, i);
      fmt::format_to(std::back_inserter(buf), "{},{},", t, i + 1);
      if (a == Action::kAbstain) {
        fmt::format_to(std::back_inserter(buf), "-,");
      } else {
        fmt::format_to(std::back_inserter(buf), "{},", a + 1);
      }
      if (m == kUnmatched) {
        fmt::format_to(std::back_inserter(buf), "-,");
      } else {
        fmt::format_to(std::back_inserter(buf), "{},", m + 1);
      }
      fmt::format_to(std::back_inserter(buf), "{:.17g}\n", trace.reward(t, i));
    }
    if (buf.size() > (1 << 16)) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_regret_csv(std::ostream& out, const RegretSeries& regret, int max_rows) {
  out << "round,player,cum_regret\n";
  const int n = static_cast<int>(regret.cumulative.size());
  if (n == 0) return;
  const auto horizon = static_cast<std::int64_t>(regret.cumulative.front().size());
  for (std::int64_t t : geometric_rounds(horizon, std::max(1, max_rows / n))) {
    for (int i = 0; i < n; ++i) {
      out << fmt::format("{},{},{:.17g}\n", t, i + 1, regret.cumulative[i][t - 1]);
    }
  }
}

void write_heatmap_csv(std::ostream& out, const Heatmap& heatmap) {
  out << "bin,player,arm,count\n";
  for (int b = 0; b < heatmap.n_bins; ++b) {
    for (int i = 0; i < heatmap.n_players; ++i) {
      for (int k = 0; k < heatmap.n_arms; ++k) {
        out << fmt::format("{},{},{},{}\n", b + 1, i + 1, k + 1, heatmap.count(b, i, k));
      }
    }
  }
}

}  // namespace mlss
