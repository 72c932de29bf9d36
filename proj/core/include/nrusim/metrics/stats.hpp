/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nrusim/common/units.hpp"
#include "nrusim/spectrum/band_plan.hpp"

namespace nrusim::metrics {

/// Round-trip summary in milliseconds. With nothing received the RTT fields
/// are zero and empty() is true.
struct PingStats {
  double min = 0.0;
  double max = 0.0;
  double avg = 0.0;
  /// Mean absolute deviation from avg.
  double mdev = 0.0;
  std::uint32_t sent = 0;
  std::uint32_t received = 0;

  bool empty() const { return received == 0; }
  double loss_fraction() const { return sent == 0 ? 0.0 : 1.0 - static_cast<double>(received) / sent; }
  /// Throws InvariantBreach on inconsistent fields.
  void check() const;
};

PingStats summarize_ping(std::span<const double> rtts_ms, std::uint32_t sent);

struct ThroughputStats {
  spectrum::Link direction = spectrum::Link::DL;
  /// Mbps.
  double peak = 0.0;
  double avg_low = 0.0;
  double avg_high = 0.0;

  void check() const;
};

/// Bins delivered bits into fixed intervals. Peak is the best interval,
/// avg_low / avg_high the worst and best windowed means.
class ThroughputMeter {
 public:
  ThroughputMeter(spectrum::Link direction, Micros interval = Micros{100'000}, Micros window = Micros{1'000'000});

  /// Bits delivered in interval `index` (0-based, contiguous).
  void record_interval(std::size_t index, double bits);
  ThroughputStats summarize() const;

  const std::vector<double>& intervals() const { return bits_; }
  Micros interval() const { return interval_; }

 private:
  spectrum::Link direction_;
  Micros interval_;
  Micros window_;
  std::vector<double> bits_;
};

}  // namespace nrusim::metrics
