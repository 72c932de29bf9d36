/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nrusim/common/units.hpp"
#include "nrusim/spectrum/band_plan.hpp"

namespace nrusim::userplane {

struct RelayPolicy {
  /// False when the radio link cannot hold synchronisation for bulk data.
  bool viable = true;
  /// Inner packets up to this size still pass over a non-viable link.
  std::size_t small_packet_limit = 128;
  Micros processing{0};
};

struct RelayResult {
  std::optional<std::vector<std::uint8_t>> bytes;
  Micros latency{0};
};

struct RelayStats {
  std::uint64_t relayed = 0;
  std::uint64_t dropped = 0;
  Micros total_latency{0};
};

/// gNB leg between the radio bearer and the N3 tunnel. Uplink wraps inner
/// packets in GTP-U; downlink strips GTP-U.
class GnbRelay {
 public:
  explicit GnbRelay(RelayPolicy policy = {}) : policy_(policy) {}

  RelayResult relay(spectrum::Link direction, std::span<const std::uint8_t> bytes,
                    std::uint32_t uplink_teid = 0);

  bool passes(std::size_t inner_size) const;
  const RelayPolicy& policy() const { return policy_; }
  void set_policy(RelayPolicy p) { policy_ = p; }
  const RelayStats& stats() const { return stats_; }

 private:
  RelayPolicy policy_;
  RelayStats stats_;
};

}  // namespace nrusim::userplane
