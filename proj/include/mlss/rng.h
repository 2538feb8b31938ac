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

#ifndef MLSS_RNG_H_
#define MLSS_RNG_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace mlss {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ mix64(v));
}

// Distinct purposes never share a stream.
enum class StreamTag : std::uint64_t {
  kMarket = 0x6d61726b6574ULL,
  kReward = 0x726577617264ULL,
  kRandomPolicy = 0x72616e646f6dULL,
  kTest = 0x74657374ULL,
};

// Counter-based generator: the output sequence is a pure function of
// (seed, tag, a, b), so draws for one (player, round) never depend on how
// many draws other players consumed. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, StreamTag tag, std::uint64_t a = 0,
             std::uint64_t b = 0)
      : key_(hash_combine(
            hash_combine(hash_combine(mix64(seed), static_cast<std::uint64_t>(tag)), a),
            b)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double uniform_positive() {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; consumes two draws.
  double normal() {
    const double u1 = uniform_positive();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Lemire's multiply-shift; the bias is < n / 2^64.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>((*this)()) * n) >> 64);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace mlss

#endif  // MLSS_RNG_H_
