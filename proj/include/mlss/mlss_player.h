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

// Decentralized multi-level successive selection, one state machine per
// player.
//
// Timeline (rounds are 1-based):
//   1..N        index assignment: unindexed players propose arm 0, indexed
//               players propose arm 1; whoever wins arm 0 in round t gets
//               index t-1, which equals its position in the arm ranking.
//   then        repeating cycles of [communication block][exploitation],
//               the block laid out by comm_schedule and the exploitation
//               part lasting max(1, ceil(ln T)) rounds on the chosen arm.
//
// A player re-selects its arm once per cycle, at its own sender slot, from
// all arms minus those announced by higher-ranked players, using either
// successive elimination or UCB.
//
// The player sees only its own Observation and the global round counter.

#ifndef MLSS_MLSS_PLAYER_H_
#define MLSS_MLSS_PLAYER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mlss/arm_stats.h"
#include "mlss/comm.h"
#include "mlss/env.h"
#include "mlss/policy.h"

namespace mlss {

enum class Subroutine { kElimination, kUcb };

struct MlssConfig {
  Subroutine subroutine = Subroutine::kElimination;
  std::int64_t horizon = 1;
  std::optional<int> phase_length_override;
};

// max(1, ceil(ln T)) unless overridden.
int exploitation_length(const MlssConfig& config);

class MlssPlayer {
 public:
  static constexpr int kNone = -1;

  MlssPlayer(int n_players, int n_arms, MlssConfig config);

  // Action for `round`; must be followed by observe() for the same round.
  Action act(std::int64_t round);
  void observe(const Observation& obs);

  // Introspection for tests and logging. Never fed back into play.
  int my_index() const { return my_index_; }
  int chosen_arm() const { return chosen_; }
  const ArmStats& stats() const { return stats_; }
  double ln_horizon() const { return ln_horizon_; }
  // Last announced arm of each higher-ranked player (kNone if unknown).
  const std::vector<int>& known_arms() const { return known_arms_; }
  std::vector<int> occupied() const;
  // Arms left after elimination at the most recent selection.
  const std::vector<int>& candidates() const { return candidates_; }
  // Arms that some other arm has confidently beaten at some point.
  std::vector<int> eliminated() const;
  bool dominates(int winner, int loser) const {
    return dominance_[static_cast<std::size_t>(winner) * n_arms_ + loser] != 0;
  }
  int protocol_errors() const { return protocol_errors_; }
  std::int64_t selections() const { return selections_; }

 private:
  enum class RoundKind { kIndex, kComm, kExploit };
  struct Position {
    RoundKind kind;
    std::int64_t cycle;
    int offset;
  };

  // What the last act() committed to, for interpreting the observation.
  struct Pending {
    bool pull = false;          // a genuine sample of the chosen arm
    int receive_from = -1;      // sender whose bit we are reading
    int detect_sender = -1;     // holding in this sender's slot, flag unknown
  };

  Position locate(std::int64_t round) const;
  void enter_cycle(std::int64_t cycle);
  void rebuild_schedule();
  void select_arm();
  Action hold();
  Action comm_action(int offset);

  int n_players_;
  int n_arms_;
  MlssConfig config_;
  double ln_horizon_;
  int exploit_length_;
  int block_length_;
  int bits_;

  int my_index_ = kNone;
  ArmStats stats_;
  std::vector<char> dominance_;  // [winner * K + loser]
  std::vector<int> known_arms_;
  std::vector<int> candidates_;
  int chosen_ = kNone;

  // Per-cycle state.
  std::int64_t cycle_ = -1;
  bool selected_ = false;
  std::optional<int> first_changed_;
  CommSchedule schedule_;
  std::vector<bool> rx_bits_;

  Pending pending_;
  int protocol_errors_ = 0;
  std::int64_t selections_ = 0;
};

// All players of one market running MLSS, each fed only its own
// observation.
class MlssPolicy : public Policy {
 public:
  MlssPolicy(int n_players, int n_arms, MlssConfig config);

  int n_players() const override { return static_cast<int>(players_.size()); }
  int n_arms() const override { return n_arms_; }
  InfoModel info_model() const override { return InfoModel::kCollisionOnly; }
  std::vector<Action> act(std::int64_t round) override;
  void observe(std::span<const Observation> observations) override;
  int protocol_errors() const override;

  const MlssPlayer& player(int i) const { return players_[i]; }
  std::span<const MlssPlayer> players() const { return players_; }

 private:
  int n_arms_;
  std::vector<MlssPlayer> players_;
};

}  // namespace mlss

#endif  // MLSS_MLSS_PLAYER_H_
