/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nrusim/common/ipv4.hpp"
#include "nrusim/common/units.hpp"
#include "nrusim/userplane/packet.hpp"
#include "nrusim/userplane/pcap.hpp"

namespace nrusim::metrics {

struct PassiveSession {
  /// Hash of (protocol, responder, ICMP identifier); unchanged by source
  /// rewriting on the way out of the core.
  std::uint32_t session_id = 0;
  /// Initiator as seen at this tap.
  Ipv4Address left;
  /// Responder.
  Ipv4Address right;
  std::optional<double> rtt_latest_ms;
  std::uint64_t packet_count = 0;
  std::uint64_t byte_count = 0;
};

std::uint32_t flow_session_id(userplane::IpProtocol protocol, Ipv4Address responder, std::uint16_t ident);

/// Fold over an observed packet stream. Frames inside GTP-U (UDP 2152) are
/// decapsulated first. Only ICMP echo flows form sessions.
class PassiveMonitor {
 public:
  void observe(Micros timestamp, std::span<const std::uint8_t> frame);
  void observe(const userplane::CapturedPacket& p) { observe(p.timestamp, p.bytes); }

  /// Sessions in order of first appearance.
  std::vector<PassiveSession> sessions() const;
  std::uint64_t frames() const { return frames_; }
  std::uint64_t bytes() const { return bytes_; }
  std::uint64_t unparseable() const { return unparseable_; }
  std::uint64_t non_icmp() const { return non_icmp_; }

 private:
  struct Flow {
    std::size_t order = 0;
    PassiveSession session;
    std::map<std::uint16_t, Micros> pending;  // seq -> request time
  };

  void observe_ip(Micros timestamp, const userplane::InnerPacket& p, std::size_t wire_bytes);

  std::map<std::uint32_t, Flow> flows_;
  std::uint64_t frames_ = 0;
  std::uint64_t bytes_ = 0;
  std::uint64_t unparseable_ = 0;
  std::uint64_t non_icmp_ = 0;
};

std::vector<PassiveSession> passive_monitor(std::span<const userplane::CapturedPacket> packets);

/// Text view, one header line then one line per session:
/// `ICMP <left> <-> <right> <session> <packets> <rtt|n/a>`.
std::string render_sessions(const PassiveMonitor& monitor);

}  // namespace nrusim::metrics
