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

#include "mlss/market_io.h"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "mlss/error.h"

namespace mlss {

std::string market_to_json(const MarketInstance& market) {
  std::string out = fmt::format("{{\"n_players\": {}, \"n_arms\": {}, \"utilities\": [",
                                market.n_players(), market.n_arms());
  const auto u = market.utilities();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i > 0) out += ", ";
    out += fmt::format("{:.17g}", u[i]);
  }
  out += "], \"arm_ranking\": [";
  const auto& ranking = market.arm_ranking();
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(ranking[i] + 1);
  }
  out += "]}";
  return out;
}

MarketInstance market_from_json(const nlohmann::json& j) {
  try {
    const auto& u = j.at("utilities");
    if (!u.is_array()) throw ConfigError("utilities must be an array");
    // Nested rows carry their own shape; a flat array needs n_players/n_arms.
    const bool nested = !u.empty() && u.front().is_array();
    const int n = j.contains("n_players") || !nested ? j.at("n_players").get<int>()
                                                     : static_cast<int>(u.size());
    const int k = j.contains("n_arms") || !nested ? j.at("n_arms").get<int>()
                                                  : static_cast<int>(u.front().size());
    std::vector<double> utilities;
    for (const auto& entry : u) {
      if (entry.is_array()) {  // nested rows are accepted too
        for (const auto& x : entry) utilities.push_back(x.get<double>());
      } else {
        utilities.push_back(entry.get<double>());
      }
    }
    std::vector<int> ranking;
    if (j.contains("arm_ranking")) {
      for (const auto& p : j.at("arm_ranking")) ranking.push_back(p.get<int>() - 1);
    } else {
      for (int i = 0; i < n; ++i) ranking.push_back(i);
    }
    return MarketInstance(n, k, std::move(utilities), std::move(ranking));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("malformed market JSON: {}", e.what()));
  }
}

MarketInstance market_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("market JSON does not parse: {}", e.what()));
  }
  return market_from_json(j);
}

MarketInstance market_from_json(const std::string& text) {
  return market_from_json(std::string_view(text));
}

MarketInstance load_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot read market file {}", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return market_from_json(std::string_view(buffer.str()));
}

std::string market_digest(const MarketInstance& market) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : market_to_json(market)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace mlss
