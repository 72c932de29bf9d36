/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <vector>

#include "nrusim/common/rng.hpp"
#include "nrusim/common/units.hpp"

namespace nrusim::access {

/// Energy-detect clear channel assessment with binary exponential backoff.
struct LbtConfig {
  double cca_threshold_dbm = -72.0;
  Micros cca_duration{25};
  std::uint32_t cw_min = 15;
  std::uint32_t cw_max = 1023;
  Micros backoff_slot{9};

  void validate() const;
};

/// One foreign transmission on the shared channel, active on [start, end).
struct Burst {
  Micros start{0};
  Micros end{0};
  double power_dbm = 0.0;
};

struct BusyInterval {
  Micros start{0};
  Micros end{0};
};

class ChannelOccupancy {
 public:
  ChannelOccupancy() = default;
  explicit ChannelOccupancy(std::vector<Burst> bursts);

  void add(Burst b);
  const std::vector<Burst>& bursts() const { return bursts_; }

  /// Summed foreign power at `t`, or -inf when silent.
  double energy_dbm_at(Micros t) const;

  /// Maximal half-open intervals where summed power reaches `threshold_dbm`.
  /// Overlapping bursts add in linear power.
  std::vector<BusyInterval> busy_intervals(double threshold_dbm) const;

 private:
  std::vector<Burst> bursts_;
};

struct LbtDecision {
  bool granted = false;
  /// Transmission start when granted.
  Micros at{0};
  std::uint32_t busy_observations = 0;
};

/// Stateful gate: the contention window persists across calls and resets
/// after every grant.
class LbtGate {
 public:
  LbtGate(const ChannelOccupancy& occupancy, LbtConfig cfg);

  /// Earliest grant at or after `now + cca_duration` whose sensing window
  /// [at - cca_duration, at] is free of busy energy; DEFERRED when no such
  /// grant fits before `deadline`.
  LbtDecision request(Micros now, Micros deadline, Rng& rng);

  std::uint32_t contention_window() const { return cw_; }
  const std::vector<BusyInterval>& busy() const { return busy_; }
  const LbtConfig& config() const { return cfg_; }

 private:
  const BusyInterval* first_overlap(Micros lo, Micros hi) const;

  LbtConfig cfg_;
  std::vector<BusyInterval> busy_;
  std::uint32_t cw_;
};

LbtDecision lbt_gate(const ChannelOccupancy& occupancy, const LbtConfig& cfg, Micros now, Micros deadline, Rng& rng);

}  // namespace nrusim::access
