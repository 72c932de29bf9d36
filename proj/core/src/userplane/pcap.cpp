/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/userplane/pcap.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>

#include "nrusim/common/error.hpp"
#include "nrusim/userplane/packet.hpp"

namespace nrusim::userplane {
namespace {

constexpr std::uint32_t kMagicMicros = 0xA1B2C3D4;
constexpr std::uint32_t kMagicNanos = 0xA1B23C4D;
constexpr std::uint32_t kLinkEthernet = 1;
constexpr std::uint32_t kLinkLinuxSll = 113;
constexpr std::uint32_t kLinkIpv4 = 228;

void put_le32(std::ostream& o, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v), static_cast<char>(v >> 8), static_cast<char>(v >> 16),
                              static_cast<char>(v >> 24)};
  o.write(b.data(), 4);
}

void put_le16(std::ostream& o, std::uint16_t v) {
  const std::array<char, 2> b{static_cast<char>(v), static_cast<char>(v >> 8)};
  o.write(b.data(), 2);
}

std::uint32_t load32(const unsigned char* p, bool swap) {
  const std::uint32_t le = std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
                           (std::uint32_t{p[3]} << 24);
  const std::uint32_t be = std::uint32_t{p[3]} | (std::uint32_t{p[2]} << 8) | (std::uint32_t{p[1]} << 16) |
                           (std::uint32_t{p[0]} << 24);
  return swap ? be : le;
}

std::vector<std::uint8_t> to_ipv4(std::uint32_t linktype, std::vector<std::uint8_t> frame) {
  std::size_t skip = 0;
  std::uint16_t ethertype = 0x0800;
  if (linktype == kLinkEthernet) {
    if (frame.size() < 14) return {};
    skip = 14;
    ethertype = static_cast<std::uint16_t>((frame[12] << 8) | frame[13]);
    if (ethertype == 0x8100 && frame.size() >= 18) {
      skip = 18;
      ethertype = static_cast<std::uint16_t>((frame[16] << 8) | frame[17]);
    }
  } else if (linktype == kLinkLinuxSll) {
    if (frame.size() < 16) return {};
    skip = 16;
    ethertype = static_cast<std::uint16_t>((frame[14] << 8) | frame[15]);
  } else if (linktype != kLinkTypeRaw && linktype != kLinkIpv4) {
    return {};
  }
  if (ethertype != 0x0800) return {};
  frame.erase(frame.begin(), frame.begin() + static_cast<std::ptrdiff_t>(skip));
  if (frame.empty() || (frame[0] >> 4) != 4) return {};
  return frame;
}

}  // namespace

void write_pcap(std::ostream& out, std::span<const CapturedPacket> packets) {
  put_le32(out, kMagicMicros);
  put_le16(out, 2);
  put_le16(out, 4);
  put_le32(out, 0);
  put_le32(out, 0);
  put_le32(out, 65535);
  put_le32(out, kLinkTypeRaw);
  for (const auto& p : packets) {
    const auto us = p.timestamp.count();
    put_le32(out, static_cast<std::uint32_t>(us / 1'000'000));
    put_le32(out, static_cast<std::uint32_t>(us % 1'000'000));
    put_le32(out, static_cast<std::uint32_t>(p.bytes.size()));
    put_le32(out, static_cast<std::uint32_t>(p.bytes.size()));
    out.write(reinterpret_cast<const char*>(p.bytes.data()), static_cast<std::streamsize>(p.bytes.size()));
  }
}

void write_pcap_file(const std::string& path, std::span<const CapturedPacket> packets) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  write_pcap(f, packets);
}

std::vector<CapturedPacket> read_pcap(std::istream& in) {
  std::array<unsigned char, 24> gh{};
  if (!in.read(reinterpret_cast<char*>(gh.data()), gh.size())) throw PacketError("pcap global header truncated");
  const std::uint32_t magic_le = load32(gh.data(), false);
  bool swap = false;
  bool nanos = false;
  if (magic_le == kMagicMicros || magic_le == kMagicNanos) {
    nanos = magic_le == kMagicNanos;
  } else {
    const std::uint32_t magic_be = load32(gh.data(), true);
    if (magic_be != kMagicMicros && magic_be != kMagicNanos) throw PacketError("not a pcap file");
    swap = true;
    nanos = magic_be == kMagicNanos;
  }
  const std::uint32_t linktype = load32(gh.data() + 20, swap) & 0x0FFFFFFF;
  std::vector<CapturedPacket> out;
  std::array<unsigned char, 16> rh{};
  while (in.read(reinterpret_cast<char*>(rh.data()), rh.size())) {
    const std::uint32_t sec = load32(rh.data(), swap);
    const std::uint32_t frac = load32(rh.data() + 4, swap);
    const std::uint32_t incl = load32(rh.data() + 8, swap);
    if (incl > (1u << 26)) throw PacketError("pcap record length implausible");
    std::vector<std::uint8_t> frame(incl);
    if (!in.read(reinterpret_cast<char*>(frame.data()), incl)) throw PacketError("pcap record truncated");
    const std::int64_t us = std::int64_t{sec} * 1'000'000 + (nanos ? frac / 1000 : frac);
    out.push_back(CapturedPacket{Micros{us}, to_ipv4(linktype, std::move(frame))});
  }
  if (in.gcount() != 0) throw PacketError("pcap record header truncated");
  return out;
}

std::vector<CapturedPacket> read_pcap_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "'");
  return read_pcap(f);
}

}  // namespace nrusim::userplane
