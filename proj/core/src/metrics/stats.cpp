/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/metrics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "nrusim/common/error.hpp"

namespace nrusim::metrics {

void PingStats::check() const {
  if (received > sent) throw InvariantBreach("ping received " + std::to_string(received) + " of " + std::to_string(sent));
  if (received == 0) return;
  const double eps = 1e-9;
  if (!(min <= avg + eps && avg <= max + eps)) throw InvariantBreach("ping stats violate min <= avg <= max");
  if (mdev < 0.0 || mdev > max - min + eps) throw InvariantBreach("ping mdev outside [0, max - min]");
}

PingStats summarize_ping(std::span<const double> rtts_ms, std::uint32_t sent) {
  PingStats s;
  s.sent = sent;
  s.received = static_cast<std::uint32_t>(rtts_ms.size());
  if (rtts_ms.empty()) return s;
  const auto [lo, hi] = std::minmax_element(rtts_ms.begin(), rtts_ms.end());
  s.min = *lo;
  s.max = *hi;
  s.avg = std::accumulate(rtts_ms.begin(), rtts_ms.end(), 0.0) / static_cast<double>(rtts_ms.size());
  double dev = 0.0;
  for (double r : rtts_ms) dev += std::fabs(r - s.avg);
  s.mdev = dev / static_cast<double>(rtts_ms.size());
  // Summation order can push the mean a hair outside [min, max].
  s.avg = std::clamp(s.avg, s.min, s.max);
  s.check();
  return s;
}

void ThroughputStats::check() const {
  const double eps = 1e-9;
  if (avg_low < -eps || avg_low > avg_high + eps || avg_high > peak + eps) {
    throw InvariantBreach("throughput stats violate 0 <= avg_low <= avg_high <= peak");
  }
}

ThroughputMeter::ThroughputMeter(spectrum::Link direction, Micros interval, Micros window)
    : direction_(direction), interval_(interval), window_(window) {
  if (interval.count() <= 0 || window < interval || window.count() % interval.count() != 0) {
    throw DomainError("throughput window must be a positive multiple of the interval");
  }
}

void ThroughputMeter::record_interval(std::size_t index, double bits) {
  if (bits < 0.0) throw DomainError("negative delivered bits");
  if (bits_.size() <= index) bits_.resize(index + 1, 0.0);
  bits_[index] += bits;
}

ThroughputStats ThroughputMeter::summarize() const {
  ThroughputStats s;
  s.direction = direction_;
  if (bits_.empty()) return s;
  const double interval_s = static_cast<double>(interval_.count()) / 1e6;
  for (double b : bits_) s.peak = std::max(s.peak, b / interval_s / 1e6);
  const auto per_window = static_cast<std::size_t>(window_.count() / interval_.count());
  const std::size_t windows = bits_.size() / per_window;
  if (windows == 0) {
    // Shorter than one window: a single partial mean.
    const double mean = std::accumulate(bits_.begin(), bits_.end(), 0.0) /
                        (interval_s * static_cast<double>(bits_.size())) / 1e6;
    s.avg_low = s.avg_high = std::min(mean, s.peak);
    return s;
  }
  s.avg_low = std::numeric_limits<double>::infinity();
  for (std::size_t w = 0; w < windows; ++w) {
    double sum = 0.0;
    for (std::size_t i = 0; i < per_window; ++i) sum += bits_[w * per_window + i];
    const double mbps = std::min(sum / (interval_s * static_cast<double>(per_window)) / 1e6, s.peak);
    s.avg_low = std::min(s.avg_low, mbps);
    s.avg_high = std::max(s.avg_high, mbps);
  }
  s.check();
  return s;
}

}  // namespace nrusim::metrics
