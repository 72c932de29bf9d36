/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nrusim/common/ipv4.hpp"
#include "nrusim/userplane/packet.hpp"

namespace nrusim::userplane {

struct SessionRoute {
  std::uint64_t session_id = 0;
  Ipv4Address ue_ip;
  std::uint32_t teid_uplink = 0;
  std::uint32_t teid_downlink = 0;
  /// Node name of the serving gNB.
  std::string gnb;
};

/// N6 translation key: protocol plus ICMP identifier or transport port.
struct NatKey {
  IpProtocol protocol;
  std::uint16_t id;
  auto operator<=>(const NatKey&) const = default;
};

struct RouteTable {
  Cidr ue_pool;
  /// First host of the pool; terminates at the core host.
  Ipv4Address pool_gateway;
  /// UPF address on the core network; the source of north-south egress.
  Ipv4Address n6_address;
  Ipv4Address external_gateway;
  std::map<std::uint32_t, SessionRoute> sessions;  // by UE IP
  std::map<NatKey, std::uint32_t> nat;             // -> UE IP

  void add_session(SessionRoute r);
  void remove_session(Ipv4Address ue_ip);
};

namespace forward {
/// Re-encapsulate toward a UE's downlink tunnel.
struct ToSession {
  SessionRoute target;
  /// Set when the destination must be rewritten (N6 return traffic).
  std::optional<Ipv4Address> restore_dst;
};
/// Leave through N6, source rewritten to the UPF address.
struct ToExternal {
  Ipv4Address next_hop;
  Ipv4Address rewritten_src;
};
/// Addressed to the pool gateway on the core host.
struct ToLocal {};
struct Drop {
  std::string reason;
};
}  // namespace forward

using ForwardDecision = std::variant<forward::ToSession, forward::ToExternal, forward::ToLocal, forward::Drop>;

/// Routing decision for a packet at the UPF. Depends only on the destination
/// (plus ICMP id / port for N6 return traffic) and the route state.
ForwardDecision upf_forward(const InnerPacket& packet, const RouteTable& routes);

struct UpfCounters {
  std::uint64_t uplink = 0;
  std::uint64_t downlink = 0;
  std::uint64_t n6_egress = 0;
  std::uint64_t n6_ingress = 0;
  std::uint64_t east_west = 0;
  std::uint64_t local = 0;
  std::uint64_t dropped_unknown_session = 0;
  std::uint64_t dropped_unknown_teid = 0;
  std::uint64_t dropped_malformed = 0;
};

/// User plane function: terminates N3 tunnels and forwards between UEs, the
/// core host and the N6 network.
class Upf {
 public:
  explicit Upf(RouteTable routes) : routes_(std::move(routes)) {}

  struct ToGnb {
    SessionRoute target;
    std::vector<std::uint8_t> gtpu;
  };
  struct ToN6 {
    std::vector<std::uint8_t> ip;
  };
  struct ToCoreHost {
    InnerPacket packet;
  };
  struct Dropped {
    std::string reason;
  };
  using Output = std::variant<ToGnb, ToN6, ToCoreHost, Dropped>;

  /// Uplink G-PDU from a gNB.
  Output from_n3(std::span<const std::uint8_t> gtpu);
  /// IP packet arriving from the external network.
  Output from_n6(std::span<const std::uint8_t> ip);
  /// Packet originated by the core host (pool gateway).
  Output from_core_host(const InnerPacket& packet);

  RouteTable& routes() { return routes_; }
  const RouteTable& routes() const { return routes_; }
  const UpfCounters& counters() const { return counters_; }

 private:
  Output dispatch(std::span<const std::uint8_t> bytes, const InnerPacket& packet);

  RouteTable routes_;
  UpfCounters counters_;
};

}  // namespace nrusim::userplane
