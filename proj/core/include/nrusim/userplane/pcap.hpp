/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nrusim/common/units.hpp"

namespace nrusim::userplane {

/// Raw IPv4 packets (no link header).
inline constexpr std::uint32_t kLinkTypeRaw = 101;

struct CapturedPacket {
  Micros timestamp{0};
  std::vector<std::uint8_t> bytes;
};

/// Classic pcap, microsecond timestamps, LINKTYPE_RAW.
void write_pcap(std::ostream& out, std::span<const CapturedPacket> packets);
void write_pcap_file(const std::string& path, std::span<const CapturedPacket> packets);

/// Reads classic pcap in either byte order and timestamp resolution. Frames
/// are normalised to bare IPv4 for RAW, IPV4, Ethernet and Linux-cooked link
/// types; frames that are not IPv4 are kept with empty bytes so counts stay
/// faithful. Throws PacketError on a malformed file.
std::vector<CapturedPacket> read_pcap(std::istream& in);
std::vector<CapturedPacket> read_pcap_file(const std::string& path);

}  // namespace nrusim::userplane
