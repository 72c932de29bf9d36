/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <string>

#include "nrusim/common/units.hpp"
#include "nrusim/rflink/link_budget.hpp"

namespace nrusim::sim {

/// Fixed per-hop costs before host-load scaling.
struct LatencyModel {
  Micros ue_processing{0};
  Micros gnb_processing{0};
  Micros core_processing{0};
  /// Scheduling-request to uplink-grant turnaround before data can use an UL slot.
  Micros ul_grant_delay{0};
  Micros jitter_mean{0};
  /// Extra one-way latency of an over-the-air hop relative to a cable.
  Micros over_air_extra{0};
  Micros external_one_way{5000};
  /// Dwell per GSCN candidate during cell search.
  Micros cell_search_step{1000};
  /// A transmission still waiting for the channel after this long is dropped.
  Micros lbt_give_up{20'000};
};

struct ThroughputModel {
  double bits_per_re_dl = 0.0;
  double bits_per_re_ul = 0.0;
  /// Streaming efficiency 1 - k (bw / max_bw)^2.
  double sdr_rolloff_k = 0.0;
  /// Efficiency of a cabled, attenuated link relative to over the air.
  double cable_efficiency = 1.0;
  /// Per-interval fading state is uniform on [fluctuation_min, 1].
  double fluctuation_min = 1.0;
  Micros interval{100'000};
  Micros window{1'000'000};
};

struct Calibration {
  LatencyModel latency;
  ThroughputModel throughput;
  rflink::RadioModel radio;
  double viability_threshold = 0.001;
  std::size_t small_packet_limit = 128;
  std::string source;

  void validate() const;
  static Calibration load(const std::string& path);
};

}  // namespace nrusim::sim
