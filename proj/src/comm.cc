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

#include "mlss/comm.h"

#include <algorithm>

#include <fmt/format.h>

#include "mlss/error.h"
#include "mlss/market.h"

namespace mlss {

int message_bits(int n_arms) {
  int bits = 0;
  while ((1 << bits) < n_arms) ++bits;
  return bits;
}

std::vector<Action> encode_message(int arm_index, int n_arms, int comm_arm) {
  if (n_arms < 2) throw ProtocolError("messages need at least two arms");
  if (arm_index < 0 || arm_index >= n_arms) {
    throw ProtocolError(
        fmt::format("cannot encode arm {} with {} arms", arm_index, n_arms));
  }
  const int bits = message_bits(n_arms);
  std::vector<Action> rounds;
  rounds.reserve(bits);
  for (int l = bits - 1; l >= 0; --l) {
    const bool one = (arm_index >> l) & 1;
    rounds.push_back(one ? Action::abstain() : Action::propose(comm_arm));
  }
  return rounds;
}

int decode_message(std::span<const bool> collided, int n_arms) {
  const int bits = message_bits(n_arms);
  if (static_cast<int>(collided.size()) != bits) {
    throw ProtocolError(fmt::format("expected {} message rounds, got {}", bits,
                                    collided.size()));
  }
  int value = 0;
  for (bool c : collided) value = (value << 1) | (c ? 0 : 1);
  if (value >= n_arms) {
    throw ProtocolError(
        fmt::format("decoded arm {} out of range for {} arms", value, n_arms));
  }
  return value;
}

const Segment* CommSchedule::find(int offset) const {
  // Segments are contiguous and sorted by start.
  auto it = std::upper_bound(
      segments.begin(), segments.end(), offset,
      [](int off, const Segment& s) { return off < s.start; });
  if (it == segments.begin()) return nullptr;
  --it;
  if (offset >= it->start + it->length) return nullptr;
  return &*it;
}

int comm_block_length(int n_players, int n_arms) {
  const int n = n_players;
  const int l = message_bits(n_arms);
  int longest = (n - 1) * n_arms;
  for (int s = 0; s + 1 < n; ++s) {
    longest = std::max(longest, (s + 1) * n_arms + l * (n - s) * (n - s - 1) / 2);
  }
  return longest;
}

CommSchedule comm_schedule_from(int n_players, int n_arms,
                                std::optional<int> first_changed,
                                std::span<const int> held_arms) {
  const int n = n_players;
  const int k = n_arms;
  const int l = message_bits(k);
  if (first_changed && (*first_changed < 0 || *first_changed > n - 2)) {
    first_changed.reset();  // the last sender never opens a sweep
  }
  CommSchedule sched;
  sched.first_changed = first_changed;
  sched.slot_start.assign(n, 0);
  int offset = 0;
  for (int sender = 0; sender + 1 < n; ++sender) {
    if (first_changed && sender > *first_changed) break;
    sched.slot_start[sender] = offset;
    const bool sweep = first_changed && sender == *first_changed;
    sched.segments.push_back({sweep ? SegmentKind::kWakeSweep : SegmentKind::kHold,
                              sender, -1, -1, offset, k});
    offset += k;
  }
  if (first_changed) {
    const int s = *first_changed;
    std::vector<char> held(k, 0);
    for (int j = 0; j < s && j < static_cast<int>(held_arms.size()); ++j) {
      if (held_arms[j] >= 0 && held_arms[j] < k) held[held_arms[j]] = 1;
    }
    std::vector<int> free_arms;
    for (int a = 0; a < k; ++a) {
      if (!held[a]) free_arms.push_back(a);
    }
    for (int sender = s; sender < n; ++sender) {
      if (sender > s) sched.slot_start[sender] = offset;
      for (int r = sender + 1; r < n; ++r) {
        const int arm = free_arms[static_cast<std::size_t>(r) % free_arms.size()];
        sched.segments.push_back({SegmentKind::kTransmit, sender, r, arm, offset, l});
        offset += l;
      }
    }
  } else {
    sched.slot_start[n - 1] = offset;
  }
  sched.length = comm_block_length(n, k);
  if (offset < sched.length) {
    sched.segments.push_back(
        {SegmentKind::kHold, -1, -1, -1, offset, sched.length - offset});
  }
  return sched;
}

CommSchedule comm_schedule(int n_players, int n_arms,
                           std::span<const bool> changed,
                           std::span<const int> held_arms) {
  std::optional<int> first;
  for (int sender = 0; sender + 1 < n_players &&
                       sender < static_cast<int>(changed.size());
       ++sender) {
    if (changed[sender]) {
      first = sender;
      break;
    }
  }
  return comm_schedule_from(n_players, n_arms, first, held_arms);
}

}  // namespace mlss
