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

// Collision channel between players.
//
// A message is an arm index sent MSB-first over ceil(log2 K) rounds on a
// shared comm arm. The receiver proposes the comm arm every round; the
// sender proposes it on 0-bits (receiver is rejected) and abstains on
// 1-bits (receiver is matched).
//
// Block layout, identical for every player given the same knowledge:
//
//   * Senders 0..N-2 each own a K-round slot while no sender has changed its
//     arm yet this block. The first changed sender s turns its slot into a
//     wake-up sweep (proposing arms 0..K-1 in order) which collides with
//     every lower-ranked player; the other slots are HOLD.
//   * From s on, every sender n >= s transmits its arm to n+1..N-1.
//   * The last player never sweeps (nobody to wake) and owns an empty slot.
//   * The block is padded with HOLD up to comm_block_length(N, K), so the
//     boundaries are known even to players ranked above s, who cannot
//     observe the sweep.
//   * The comm arm for receiver r is the r-th arm (cyclically) among arms not
//     held by players ranked above s. Those players keep proposing their
//     arms; everyone else not in a TRANSMIT pair abstains.

#ifndef MLSS_COMM_H_
#define MLSS_COMM_H_

#include <optional>
#include <span>
#include <vector>

#include "mlss/env.h"

namespace mlss {

// ceil(log2 K); 0 when K <= 1.
int message_bits(int n_arms);

// Throws ProtocolError if arm_index is outside [0, K) or K < 2.
std::vector<Action> encode_message(int arm_index, int n_arms, int comm_arm);

// collided[l] is true when the receiver was rejected in round l.
// Throws ProtocolError on a wrong length or a value >= K.
int decode_message(std::span<const bool> collided, int n_arms);

enum class SegmentKind { kWakeSweep, kTransmit, kHold };

struct Segment {
  SegmentKind kind;
  int sender;    // -1 for the trailing pad
  int receiver;  // kTransmit only, else -1
  int comm_arm;  // kTransmit only, else -1
  int start;     // offset within the block
  int length;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct CommSchedule {
  std::vector<Segment> segments;
  std::vector<int> slot_start;    // per sender: offset where it re-selects
  std::optional<int> first_changed;
  int length = 0;

  // Segment covering `offset`, or nullptr if offset is past the end.
  const Segment* find(int offset) const;

  friend bool operator==(const CommSchedule&, const CommSchedule&) = default;
};

// Fixed total length of every communication block.
int comm_block_length(int n_players, int n_arms);

// `changed[n]`: sender n's re-selection differs from its previous arm.
// `held_arms[j]`: current arm of player j (kUnmatched if none); only players
// ranked above the first changed sender are consulted. May be empty.
CommSchedule comm_schedule(int n_players, int n_arms,
                           std::span<const bool> changed,
                           std::span<const int> held_arms = {});

// Same as above, with the first changed sender given directly.
CommSchedule comm_schedule_from(int n_players, int n_arms,
                                std::optional<int> first_changed,
                                std::span<const int> held_arms = {});

}  // namespace mlss

#endif  // MLSS_COMM_H_
