/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/userplane/upf.hpp"

#include "nrusim/userplane/gtpu.hpp"

namespace nrusim::userplane {
namespace {

std::optional<NatKey> egress_key(const InnerPacket& p) {
  if (p.protocol == IpProtocol::ICMP && p.icmp) return NatKey{p.protocol, p.icmp->id};
  if (p.ports) return NatKey{p.protocol, p.ports->src};
  return std::nullopt;
}

std::optional<NatKey> ingress_key(const InnerPacket& p) {
  if (p.protocol == IpProtocol::ICMP && p.icmp) return NatKey{p.protocol, p.icmp->id};
  if (p.ports) return NatKey{p.protocol, p.ports->dst};
  return std::nullopt;
}

}  // namespace

void RouteTable::add_session(SessionRoute r) { sessions[r.ue_ip.value()] = std::move(r); }

void RouteTable::remove_session(Ipv4Address ue_ip) {
  sessions.erase(ue_ip.value());
  for (auto it = nat.begin(); it != nat.end();) {
    it = it->second == ue_ip.value() ? nat.erase(it) : std::next(it);
  }
}

ForwardDecision upf_forward(const InnerPacket& packet, const RouteTable& routes) {
  const Ipv4Address dst = packet.dst;
  if (dst == routes.n6_address) {
    const auto key = ingress_key(packet);
    if (!key) return forward::Drop{"no translation key"};
    const auto it = routes.nat.find(*key);
    if (it == routes.nat.end()) return forward::Drop{"no translation entry"};
    const auto s = routes.sessions.find(it->second);
    if (s == routes.sessions.end()) return forward::Drop{"translated session gone"};
    return forward::ToSession{s->second, Ipv4Address(it->second)};
  }
  if (dst == routes.pool_gateway) return forward::ToLocal{};
  if (routes.ue_pool.contains(dst)) {
    const auto s = routes.sessions.find(dst.value());
    if (s == routes.sessions.end()) return forward::Drop{"no active session for " + dst.to_string()};
    return forward::ToSession{s->second, std::nullopt};
  }
  return forward::ToExternal{routes.external_gateway, routes.n6_address};
}

Upf::Output Upf::dispatch(std::span<const std::uint8_t> bytes, const InnerPacket& packet) {
  const auto decision = upf_forward(packet, routes_);
  if (const auto* to = std::get_if<forward::ToSession>(&decision)) {
    ++counters_.downlink;
    if (to->restore_dst) {
      InnerPacket rewritten = packet;
      rewritten.dst = *to->restore_dst;
      const auto ip = encode_ipv4(rewritten);
      return ToGnb{to->target, encode_gtpu(to->target.teid_downlink, ip)};
    }
    // Inner bytes travel unchanged.
    return ToGnb{to->target, encode_gtpu(to->target.teid_downlink, bytes)};
  }
  if (const auto* ext = std::get_if<forward::ToExternal>(&decision)) {
    ++counters_.n6_egress;
    InnerPacket rewritten = packet;
    if (const auto key = egress_key(packet)) routes_.nat[*key] = packet.src.value();
    rewritten.src = ext->rewritten_src;
    return ToN6{encode_ipv4(rewritten)};
  }
  if (std::holds_alternative<forward::ToLocal>(decision)) {
    ++counters_.local;
    return ToCoreHost{packet};
  }
  ++counters_.dropped_unknown_session;
  return Dropped{std::get<forward::Drop>(decision).reason};
}

Upf::Output Upf::from_n3(std::span<const std::uint8_t> gtpu) {
  ++counters_.uplink;
  GtpuView view;
  InnerPacket inner;
  try {
    view = decode_gtpu(gtpu);
    inner = parse_ipv4(view.payload);
  } catch (const Error& e) {
    ++counters_.dropped_malformed;
    return Dropped{e.what()};
  }
  bool known = false;
  for (const auto& [ip, r] : routes_.sessions) {
    if (r.teid_uplink == view.header.teid) {
      known = true;
      break;
    }
  }
  if (!known) {
    ++counters_.dropped_unknown_teid;
    return Dropped{"unknown uplink TEID " + std::to_string(view.header.teid)};
  }
  if (routes_.ue_pool.contains(inner.dst) && inner.dst != routes_.pool_gateway) ++counters_.east_west;
  return dispatch(view.payload, inner);
}

Upf::Output Upf::from_n6(std::span<const std::uint8_t> ip) {
  ++counters_.n6_ingress;
  InnerPacket p;
  try {
    p = parse_ipv4(ip);
  } catch (const Error& e) {
    ++counters_.dropped_malformed;
    return Dropped{e.what()};
  }
  return dispatch(ip, p);
}

Upf::Output Upf::from_core_host(const InnerPacket& packet) {
  const auto bytes = encode_ipv4(packet);
  return dispatch(bytes, packet);
}

}  // namespace nrusim::userplane
