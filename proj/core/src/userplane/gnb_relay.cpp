/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/userplane/gnb_relay.hpp"

#include "nrusim/userplane/gtpu.hpp"

namespace nrusim::userplane {

bool GnbRelay::passes(std::size_t inner_size) const {
  return policy_.viable || inner_size <= policy_.small_packet_limit;
}

RelayResult GnbRelay::relay(spectrum::Link direction, std::span<const std::uint8_t> bytes,
                            std::uint32_t uplink_teid) {
  std::span<const std::uint8_t> inner = bytes;
  if (direction == spectrum::Link::DL) inner = decode_gtpu(bytes).payload;
  if (!passes(inner.size())) {
    ++stats_.dropped;
    return RelayResult{std::nullopt, Micros{0}};
  }
  ++stats_.relayed;
  stats_.total_latency += policy_.processing;
  if (direction == spectrum::Link::UL) return RelayResult{encode_gtpu(uplink_teid, inner), policy_.processing};
  return RelayResult{std::vector<std::uint8_t>(inner.begin(), inner.end()), policy_.processing};
}

}  // namespace nrusim::userplane
