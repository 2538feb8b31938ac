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

#ifndef MLSS_POLICY_H_
#define MLSS_POLICY_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mlss/env.h"
#include "mlss/market.h"

namespace mlss {

// Joint decision maker for all players of one episode. Decentralized
// policies route each Observation only to the player it belongs to.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual int n_players() const = 0;
  virtual int n_arms() const = 0;
  virtual InfoModel info_model() const = 0;

  // Actions for round `round` (1-based), one per player.
  virtual std::vector<Action> act(std::int64_t round) = 0;
  // Feedback for the round just played, one Observation per player.
  virtual void observe(std::span<const Observation> observations) = 0;

  virtual int protocol_errors() const { return 0; }
};

struct PolicySpec {
  std::string tag = "mlss-elim";
  std::optional<int> phase_length_override;
  std::optional<int> etc_h;  // exploration rounds per (player, arm)
};

// Tags: mlss-elim, mlss-ucb, etc, central-ucb, oracle, random.
// Throws ConfigError for an unknown tag or invalid options.
std::unique_ptr<Policy> make_policy(const PolicySpec& spec,
                                    const MarketInstance& market,
                                    std::int64_t horizon, std::uint64_t seed);

bool is_known_policy_tag(const std::string& tag);

}  // namespace mlss

#endif  // MLSS_POLICY_H_
