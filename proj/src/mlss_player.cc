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

#include "mlss/mlss_player.h"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "mlss/error.h"

namespace mlss {

int exploitation_length(const MlssConfig& config) {
  if (config.phase_length_override) {
    if (*config.phase_length_override < 1) {
      throw ConfigError("phase_length_override must be >= 1");
    }
    return *config.phase_length_override;
  }
  const double ln_t = std::log(static_cast<double>(config.horizon));
  return std::max(1, static_cast<int>(std::ceil(ln_t)));
}

MlssPlayer::MlssPlayer(int n_players, int n_arms, MlssConfig config)
    : n_players_(n_players),
      n_arms_(n_arms),
      config_(config),
      ln_horizon_(std::log(static_cast<double>(std::max<std::int64_t>(config.horizon, 1)))),
      exploit_length_(exploitation_length(config)),
      block_length_(comm_block_length(n_players, n_arms)),
      bits_(message_bits(n_arms)),
      stats_(n_arms),
      dominance_(static_cast<std::size_t>(n_arms) * n_arms, 0),
      known_arms_(n_players, kNone) {
  if (n_players < 1 || n_arms < n_players) {
    throw ConfigError(fmt::format("MLSS needs 1 <= N <= K, got N={} K={}",
                                  n_players, n_arms));
  }
  if (config.horizon < 1) throw ConfigError("horizon must be >= 1");
}

MlssPlayer::Position MlssPlayer::locate(std::int64_t round) const {
  if (round <= n_players_) return {RoundKind::kIndex, -1, static_cast<int>(round - 1)};
  const std::int64_t u = round - n_players_ - 1;
  const std::int64_t cycle_len = block_length_ + exploit_length_;
  const auto offset = static_cast<int>(u % cycle_len);
  const std::int64_t cycle = u / cycle_len;
  if (offset < block_length_) return {RoundKind::kComm, cycle, offset};
  return {RoundKind::kExploit, cycle, offset - block_length_};
}

std::vector<int> MlssPlayer::occupied() const {
  std::vector<int> arms;
  for (int j = 0; j < my_index_; ++j) {
    if (known_arms_[j] != kNone) arms.push_back(known_arms_[j]);
  }
  std::sort(arms.begin(), arms.end());
  arms.erase(std::unique(arms.begin(), arms.end()), arms.end());
  return arms;
}

std::vector<int> MlssPlayer::eliminated() const {
  std::vector<int> arms;
  for (int loser = 0; loser < n_arms_; ++loser) {
    for (int winner = 0; winner < n_arms_; ++winner) {
      if (dominates(winner, loser)) {
        arms.push_back(loser);
        break;
      }
    }
  }
  return arms;
}

void MlssPlayer::enter_cycle(std::int64_t cycle) {
  if (cycle == cycle_) return;
  cycle_ = cycle;
  selected_ = false;
  rx_bits_.clear();
  // Nobody holds an arm before the first block, so everyone knows the top
  // player's selection counts as a change.
  first_changed_.reset();
  if (cycle == 0 && n_players_ >= 2) first_changed_ = 0;
  rebuild_schedule();
}

void MlssPlayer::rebuild_schedule() {
  schedule_ = comm_schedule_from(n_players_, n_arms_, first_changed_, known_arms_);
}

void MlssPlayer::select_arm() {
  const std::vector<int> taken = occupied();
  std::vector<int> pool;
  for (int k = 0; k < n_arms_; ++k) {
    if (!std::binary_search(taken.begin(), taken.end(), k)) pool.push_back(k);
  }
  if (pool.empty()) {
    // Only reachable through a corrupted announcement.
    for (int k = 0; k < n_arms_; ++k) pool.push_back(k);
  }

  int arm = kNone;
  if (config_.subroutine == Subroutine::kElimination) {
    const auto bounds = all_bounds(stats_, ln_horizon_);
    for (int w = 0; w < n_arms_; ++w) {
      for (int l = 0; l < n_arms_; ++l) {
        if (w != l && bounds[w].lcb > bounds[l].ucb) {
          dominance_[static_cast<std::size_t>(w) * n_arms_ + l] = 1;
        }
      }
    }
    std::vector<int> survivors;
    for (int k : pool) {
      const bool beaten = std::any_of(pool.begin(), pool.end(),
                                      [&](int w) { return dominates(w, k); });
      if (!beaten) survivors.push_back(k);
    }
    // Inconsistent records (only after a confidence failure) could beat
    // every arm; fall back to the current bounds alone.
    if (survivors.empty()) survivors = pool;
    std::vector<std::int64_t> pulls;
    for (const auto& e : stats_.entries()) pulls.push_back(e.pulls);
    const EliminationResult r = elimination_select(survivors, bounds, pulls);
    arm = r.arm;
    candidates_.clear();
    for (int k : survivors) {
      if (std::find(r.newly_eliminated.begin(), r.newly_eliminated.end(), k) ==
          r.newly_eliminated.end()) {
        candidates_.push_back(k);
      }
    }
  } else {
    arm = ucb_select(pool, stats_, ln_horizon_);
    candidates_ = pool;
  }

  const bool changed = arm != chosen_;
  chosen_ = arm;
  selected_ = true;
  ++selections_;
  if (changed && !first_changed_ && my_index_ + 1 < n_players_) {
    first_changed_ = my_index_;
    rebuild_schedule();
  }
}

Action MlssPlayer::hold() {
  if (chosen_ == kNone) return Action::abstain();
  pending_.pull = true;
  return Action::propose(chosen_);
}

Action MlssPlayer::comm_action(int offset) {
  const Segment* seg = schedule_.find(offset);
  if (seg == nullptr) return hold();
  const int j = offset - seg->start;
  switch (seg->kind) {
    case SegmentKind::kHold:
      if (!first_changed_ && seg->sender >= 0 && seg->sender < my_index_) {
        pending_.detect_sender = seg->sender;
      }
      return hold();
    case SegmentKind::kWakeSweep:
      if (seg->sender == my_index_) return Action::propose(j);
      return hold();
    case SegmentKind::kTransmit:
      if (seg->sender == my_index_) {
        return encode_message(chosen_, n_arms_, seg->comm_arm)[j];
      }
      if (seg->receiver == my_index_) {
        if (j == 0) rx_bits_.clear();
        pending_.receive_from = seg->sender;
        return Action::propose(seg->comm_arm);
      }
      return Action::abstain();
  }
  return hold();
}

Action MlssPlayer::act(std::int64_t round) {
  pending_ = Pending{};
  const Position pos = locate(round);
  switch (pos.kind) {
    case RoundKind::kIndex:
      return Action::propose(my_index_ == kNone ? 0 : 1);
    case RoundKind::kComm:
      enter_cycle(pos.cycle);
      if (!selected_ && pos.offset >= schedule_.slot_start[my_index_]) select_arm();
      return comm_action(pos.offset);
    case RoundKind::kExploit:
      enter_cycle(pos.cycle);
      if (!selected_) select_arm();
      return hold();
  }
  return Action::abstain();
}

void MlssPlayer::observe(const Observation& obs) {
  if (obs.round <= n_players_) {
    if (my_index_ == kNone && obs.matched && obs.own_action.arm() == 0) {
      my_index_ = static_cast<int>(obs.round - 1);
    }
    return;
  }
  if (pending_.pull && obs.matched) {
    stats_.update(obs.own_action.arm(), obs.reward);
  }
  if (pending_.detect_sender >= 0 && !obs.matched) {
    first_changed_ = pending_.detect_sender;
    rebuild_schedule();
  }
  if (pending_.receive_from >= 0) {
    rx_bits_.push_back(!obs.matched);
    if (static_cast<int>(rx_bits_.size()) == bits_) {
      try {
        std::array<bool, 64> bits{};
        std::copy(rx_bits_.begin(), rx_bits_.end(), bits.begin());
        known_arms_[pending_.receive_from] =
            decode_message(std::span<const bool>(bits.data(), rx_bits_.size()), n_arms_);
      } catch (const ProtocolError&) {
        ++protocol_errors_;
      }
      rx_bits_.clear();
    }
  }
}

MlssPolicy::MlssPolicy(int n_players, int n_arms, MlssConfig config)
    : n_arms_(n_arms) {
  players_.reserve(n_players);
  for (int i = 0; i < n_players; ++i) players_.emplace_back(n_players, n_arms, config);
}

std::vector<Action> MlssPolicy::act(std::int64_t round) {
  std::vector<Action> actions;
  actions.reserve(players_.size());
  for (auto& p : players_) actions.push_back(p.act(round));
  return actions;
}

void MlssPolicy::observe(std::span<const Observation> observations) {
  for (std::size_t i = 0; i < players_.size(); ++i) players_[i].observe(observations[i]);
}

int MlssPolicy::protocol_errors() const {
  int total = 0;
  for (const auto& p : players_) total += p.protocol_errors();
  return total;
}

}  // namespace mlss
