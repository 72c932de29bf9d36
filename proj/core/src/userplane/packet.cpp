/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/userplane/packet.hpp"

#include "nrusim/userplane/gtpu.hpp"

namespace nrusim::userplane {
namespace {

constexpr std::size_t kIpHeader = 20;
constexpr std::size_t kIcmpHeader = 8;
constexpr std::size_t kUdpHeader = 8;
constexpr std::size_t kTcpHeader = 20;

void put16(std::vector<std::uint8_t>& v, std::size_t at, std::uint16_t x) {
  v[at] = static_cast<std::uint8_t>(x >> 8);
  v[at + 1] = static_cast<std::uint8_t>(x);
}

void put32(std::vector<std::uint8_t>& v, std::size_t at, std::uint32_t x) {
  put16(v, at, static_cast<std::uint16_t>(x >> 16));
  put16(v, at + 2, static_cast<std::uint16_t>(x));
}

std::uint16_t get16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>((b[at] << 8) | b[at + 1]);
}

std::uint32_t get32(std::span<const std::uint8_t> b, std::size_t at) {
  return (std::uint32_t{get16(b, at)} << 16) | get16(b, at + 2);
}

std::size_t transport_header(IpProtocol p) {
  switch (p) {
    case IpProtocol::ICMP: return kIcmpHeader;
    case IpProtocol::UDP: return kUdpHeader;
    case IpProtocol::TCP: return kTcpHeader;
  }
  return 0;
}

std::uint32_t pseudo_header_sum(Ipv4Address src, Ipv4Address dst, IpProtocol proto, std::size_t len) {
  std::uint32_t s = 0;
  s += src.value() >> 16;
  s += src.value() & 0xFFFF;
  s += dst.value() >> 16;
  s += dst.value() & 0xFFFF;
  s += static_cast<std::uint8_t>(proto);
  s += static_cast<std::uint32_t>(len);
  return s;
}

}  // namespace

std::size_t InnerPacket::wire_size() const { return kIpHeader + transport_header(protocol) + payload.size(); }

std::uint16_t internet_checksum(std::span<const std::uint8_t> data, std::uint32_t seed) {
  std::uint64_t sum = seed;
  std::size_t i = 0;
  for (; i + 1 < data.size(); i += 2) sum += static_cast<std::uint32_t>((data[i] << 8) | data[i + 1]);
  if (i < data.size()) sum += static_cast<std::uint32_t>(data[i] << 8);
  while (sum >> 16) sum = (sum & 0xFFFF) + (sum >> 16);
  return static_cast<std::uint16_t>(~sum);
}

std::vector<std::uint8_t> encode_ipv4(const InnerPacket& p) {
  const std::size_t th = transport_header(p.protocol);
  const std::size_t total = kIpHeader + th + p.payload.size();
  if (total > 0xFFFF) throw PacketError("IPv4 packet exceeds 65535 octets");
  std::vector<std::uint8_t> v(total, 0);
  v[0] = 0x45;
  v[1] = p.tos;
  put16(v, 2, static_cast<std::uint16_t>(total));
  put16(v, 4, p.ident);
  put16(v, 6, p.flags_fragment);
  v[8] = p.ttl;
  v[9] = static_cast<std::uint8_t>(p.protocol);
  put32(v, 12, p.src.value());
  put32(v, 16, p.dst.value());
  put16(v, 10, internet_checksum(std::span(v).first(kIpHeader)));

  std::copy(p.payload.begin(), p.payload.end(), v.begin() + static_cast<std::ptrdiff_t>(kIpHeader + th));
  auto l4 = std::span(v).subspan(kIpHeader);
  switch (p.protocol) {
    case IpProtocol::ICMP: {
      if (!p.icmp) throw PacketError("ICMP packet without ICMP header");
      v[20] = p.icmp->type;
      v[21] = p.icmp->code;
      put16(v, 24, p.icmp->id);
      put16(v, 26, p.icmp->seq);
      put16(v, 22, internet_checksum(l4));
      break;
    }
    case IpProtocol::UDP: {
      if (!p.ports) throw PacketError("UDP packet without ports");
      put16(v, 20, p.ports->src);
      put16(v, 22, p.ports->dst);
      put16(v, 24, static_cast<std::uint16_t>(l4.size()));
      std::uint16_t c = internet_checksum(l4, pseudo_header_sum(p.src, p.dst, p.protocol, l4.size()));
      put16(v, 26, c == 0 ? 0xFFFF : c);
      break;
    }
    case IpProtocol::TCP: {
      if (!p.ports) throw PacketError("TCP packet without ports");
      put16(v, 20, p.ports->src);
      put16(v, 22, p.ports->dst);
      v[32] = 0x50;  // data offset 5
      v[33] = 0x10;  // ACK
      put16(v, 34, 0xFFFF);
      put16(v, 36, internet_checksum(l4, pseudo_header_sum(p.src, p.dst, p.protocol, l4.size())));
      break;
    }
  }
  return v;
}

InnerPacket parse_ipv4(std::span<const std::uint8_t> b) {
  if (b.size() < kIpHeader) throw PacketError("truncated IPv4 header");
  if ((b[0] >> 4) != 4) throw PacketError("not an IPv4 packet");
  const std::size_t ihl = std::size_t{b[0] & 0x0Fu} * 4;
  if (ihl < kIpHeader || ihl > b.size()) throw PacketError("bad IPv4 header length");
  const std::size_t total = get16(b, 2);
  if (total < ihl || total > b.size()) throw PacketError("IPv4 total length exceeds the frame");
  if (internet_checksum(b.first(ihl)) != 0) throw PacketError("IPv4 header checksum mismatch");
  b = b.first(total);

  InnerPacket p;
  p.tos = b[1];
  p.ident = get16(b, 4);
  p.flags_fragment = get16(b, 6);
  p.ttl = b[8];
  p.src = Ipv4Address(get32(b, 12));
  p.dst = Ipv4Address(get32(b, 16));
  auto l4 = b.subspan(ihl);
  switch (b[9]) {
    case 1: {
      p.protocol = IpProtocol::ICMP;
      if (l4.size() < kIcmpHeader) throw PacketError("truncated ICMP header");
      p.icmp = IcmpHeader{l4[0], l4[1], get16(l4, 4), get16(l4, 6)};
      p.payload.assign(l4.begin() + kIcmpHeader, l4.end());
      break;
    }
    case 17: {
      p.protocol = IpProtocol::UDP;
      if (l4.size() < kUdpHeader) throw PacketError("truncated UDP header");
      p.ports = Ports{get16(l4, 0), get16(l4, 2)};
      p.payload.assign(l4.begin() + kUdpHeader, l4.end());
      break;
    }
    case 6: {
      p.protocol = IpProtocol::TCP;
      if (l4.size() < kTcpHeader) throw PacketError("truncated TCP header");
      const std::size_t off = std::size_t{static_cast<std::uint8_t>(l4[12] >> 4)} * 4;
      if (off < kTcpHeader || off > l4.size()) throw PacketError("bad TCP data offset");
      p.ports = Ports{get16(l4, 0), get16(l4, 2)};
      p.payload.assign(l4.begin() + static_cast<std::ptrdiff_t>(off), l4.end());
      break;
    }
    default:
      throw PacketError("unsupported IP protocol " + std::to_string(b[9]));
  }
  return p;
}

InnerPacket make_echo_request(Ipv4Address src, Ipv4Address dst, std::uint16_t id, std::uint16_t seq,
                              std::size_t data_size) {
  InnerPacket p;
  p.src = src;
  p.dst = dst;
  p.protocol = IpProtocol::ICMP;
  p.ident = seq;
  p.icmp = IcmpHeader{kIcmpEchoRequest, 0, id, seq};
  p.payload.resize(data_size);
  for (std::size_t i = 0; i < data_size; ++i) p.payload[i] = static_cast<std::uint8_t>(i);
  return p;
}

InnerPacket make_echo_reply(const InnerPacket& request) {
  InnerPacket r = request;
  std::swap(r.src, r.dst);
  if (r.icmp) r.icmp->type = kIcmpEchoReply;
  return r;
}

InnerPacket make_udp(Ipv4Address src, Ipv4Address dst, std::uint16_t sport, std::uint16_t dport,
                     std::size_t ip_size) {
  if (ip_size < kIpHeader + kUdpHeader) throw PacketError("UDP packet smaller than its headers");
  InnerPacket p;
  p.src = src;
  p.dst = dst;
  p.protocol = IpProtocol::UDP;
  p.ports = Ports{sport, dport};
  p.payload.assign(ip_size - kIpHeader - kUdpHeader, 0);
  return p;
}

std::vector<std::uint8_t> encode_n3_frame(Ipv4Address src, Ipv4Address dst, std::uint32_t teid,
                                          std::span<const std::uint8_t> inner) {
  InnerPacket outer;
  outer.src = src;
  outer.dst = dst;
  outer.protocol = IpProtocol::UDP;
  outer.ports = Ports{kGtpuPort, kGtpuPort};
  outer.payload = encode_gtpu(teid, inner);
  return encode_ipv4(outer);
}

std::string describe(const InnerPacket& p) {
  std::string s = p.src.to_string() + " > " + p.dst.to_string();
  switch (p.protocol) {
    case IpProtocol::ICMP:
      s += " ICMP";
      if (p.icmp) {
        s += p.icmp->type == kIcmpEchoRequest ? " echo-request" : p.icmp->type == kIcmpEchoReply ? " echo-reply" : "";
        s += " id=" + std::to_string(p.icmp->id) + " seq=" + std::to_string(p.icmp->seq);
      }
      break;
    case IpProtocol::UDP: s += " UDP"; break;
    case IpProtocol::TCP: s += " TCP"; break;
  }
  return s + " len=" + std::to_string(p.wire_size());
}

}  // namespace nrusim::userplane
