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

#include "mlss/policy.h"

#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "mlss/baselines.h"
#include "mlss/error.h"
#include "mlss/mlss_player.h"

namespace mlss {
namespace {

constexpr std::array<std::string_view, 6> kTags = {
    "mlss-elim", "mlss-ucb", "etc", "central-ucb", "oracle", "random"};

int default_etc_h(const MarketInstance& market, std::int64_t horizon) {
  if (market.n_arms() < 2) return 1;
  const double gap = min_gap(market);
  const double ln_t = std::log(static_cast<double>(horizon));
  const double h = std::ceil(8.0 * ln_t / (gap * gap));
  if (!(h < static_cast<double>(std::numeric_limits<int>::max()))) {
    throw ConfigError(fmt::format("ETC h overflows for min gap {}", gap));
  }
  return std::max(1, static_cast<int>(h));
}

}  // namespace

bool is_known_policy_tag(const std::string& tag) {
  for (auto t : kTags) {
    if (t == tag) return true;
  }
  return false;
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec,
                                    const MarketInstance& market,
                                    std::int64_t horizon, std::uint64_t seed) {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  const int n = market.n_players();
  const int k = market.n_arms();
  if (spec.tag == "mlss-elim" || spec.tag == "mlss-ucb") {
    MlssConfig config;
    config.subroutine =
        spec.tag == "mlss-elim" ? Subroutine::kElimination : Subroutine::kUcb;
    config.horizon = horizon;
    config.phase_length_override = spec.phase_length_override;
    return std::make_unique<MlssPolicy>(n, k, config);
  }
  if (spec.tag == "etc") {
    return std::make_unique<EtcPolicy>(
        market, spec.etc_h ? *spec.etc_h : default_etc_h(market, horizon));
  }
  if (spec.tag == "central-ucb") return std::make_unique<CentralUcbPolicy>(market, horizon);
  if (spec.tag == "oracle") return std::make_unique<OraclePolicy>(market);
  if (spec.tag == "random") return std::make_unique<RandomPolicy>(n, k, seed);
  throw ConfigError(fmt::format("unknown policy tag '{}'", spec.tag));
}

}  // namespace mlss
