/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nrusim/common/error.hpp"
#include "nrusim/common/ipv4.hpp"

namespace nrusim::userplane {

enum class IpProtocol : std::uint8_t { ICMP = 1, TCP = 6, UDP = 17 };

inline constexpr std::uint8_t kIcmpEchoReply = 0;
inline constexpr std::uint8_t kIcmpEchoRequest = 8;

struct IcmpHeader {
  std::uint8_t type = kIcmpEchoRequest;
  std::uint8_t code = 0;
  /// Identifier and sequence; meaningful for echo messages.
  std::uint16_t id = 0;
  std::uint16_t seq = 0;

  bool is_echo() const { return type == kIcmpEchoRequest || type == kIcmpEchoReply; }
};

struct Ports {
  std::uint16_t src = 0;
  std::uint16_t dst = 0;
};

/// IPv4 packet carried inside the tunnel (no options).
struct InnerPacket {
  Ipv4Address src;
  Ipv4Address dst;
  IpProtocol protocol = IpProtocol::ICMP;
  std::uint8_t ttl = 64;
  std::uint8_t tos = 0;
  std::uint16_t ident = 0;
  std::uint16_t flags_fragment = 0;
  std::optional<IcmpHeader> icmp;
  std::optional<Ports> ports;
  /// Bytes after the ICMP/UDP/TCP header.
  std::vector<std::uint8_t> payload;

  std::size_t wire_size() const;
};

class PacketError : public Error {
 public:
  using Error::Error;
};

/// Builds header checksums; throws PacketError if the transport header is
/// missing for the protocol.
std::vector<std::uint8_t> encode_ipv4(const InnerPacket& p);

/// Throws PacketError on truncation, bad version/IHL, bad header checksum or
/// unsupported protocol.
InnerPacket parse_ipv4(std::span<const std::uint8_t> bytes);

/// Standard ICMP echo request of `data_size` bytes (ping -s).
InnerPacket make_echo_request(Ipv4Address src, Ipv4Address dst, std::uint16_t id, std::uint16_t seq,
                              std::size_t data_size = 56);
/// Reply mirroring `request`.
InnerPacket make_echo_reply(const InnerPacket& request);

/// UDP datagram of `size` total IP bytes, used for bulk traffic.
InnerPacket make_udp(Ipv4Address src, Ipv4Address dst, std::uint16_t sport, std::uint16_t dport,
                     std::size_t ip_size);

/// Internet checksum (RFC 1071) over `data`.
std::uint16_t internet_checksum(std::span<const std::uint8_t> data, std::uint32_t seed = 0);

/// Outer IPv4/UDP/GTP-U frame as seen on the N3 link.
std::vector<std::uint8_t> encode_n3_frame(Ipv4Address src, Ipv4Address dst, std::uint32_t teid,
                                          std::span<const std::uint8_t> inner);

std::string describe(const InnerPacket& p);

}  // namespace nrusim::userplane
