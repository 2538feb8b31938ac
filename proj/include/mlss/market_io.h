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

// Market JSON: {"n_players", "n_arms", "utilities": [row-major, flat],
// "arm_ranking": [1-based players, most preferred first]}. Utilities are
// written with 17 significant digits so a reload is bit-exact.

#ifndef MLSS_MARKET_IO_H_
#define MLSS_MARKET_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "mlss/market.h"

namespace mlss {

std::string market_to_json(const MarketInstance& market);

// Throws ConfigError on malformed JSON or a market violating invariants.
MarketInstance market_from_json(std::string_view text);
MarketInstance market_from_json(const std::string& text);
MarketInstance market_from_json(const nlohmann::json& j);

// Throws IoError if the file cannot be read.
MarketInstance load_market(const std::filesystem::path& path);

// FNV-1a of the canonical JSON, as 16 hex digits.
std::string market_digest(const MarketInstance& market);

}  // namespace mlss

#endif  // MLSS_MARKET_IO_H_
