/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/metrics/passive_monitor.hpp"

#include <algorithm>
#include <cstdio>

#include "nrusim/userplane/gtpu.hpp"

namespace nrusim::metrics {
namespace {

constexpr std::uint32_t kFnvOffset = 2166136261u;
constexpr std::uint32_t kFnvPrime = 16777619u;

void fnv(std::uint32_t& h, std::uint8_t b) {
  h ^= b;
  h *= kFnvPrime;
}

constexpr std::uint8_t kEchoReply = 0;
constexpr std::uint8_t kEchoRequest = 8;

std::string human_bytes(std::uint64_t n) {
  char buf[32];
  if (n < 1000) {
    std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(n));
  } else if (n < 1000 * 1000) {
    std::snprintf(buf, sizeof buf, "%.1fK", static_cast<double>(n) / 1000.0);
  } else {
    std::snprintf(buf, sizeof buf, "%.1fM", static_cast<double>(n) / 1e6);
  }
  return buf;
}

}  // namespace

std::uint32_t flow_session_id(userplane::IpProtocol protocol, Ipv4Address responder, std::uint16_t ident) {
  std::uint32_t h = kFnvOffset;
  fnv(h, static_cast<std::uint8_t>(protocol));
  for (int shift = 24; shift >= 0; shift -= 8) fnv(h, static_cast<std::uint8_t>(responder.value() >> shift));
  fnv(h, static_cast<std::uint8_t>(ident >> 8));
  fnv(h, static_cast<std::uint8_t>(ident));
  return h;
}

void PassiveMonitor::observe(Micros timestamp, std::span<const std::uint8_t> frame) {
  ++frames_;
  bytes_ += frame.size();
  userplane::InnerPacket p;
  try {
    p = userplane::parse_ipv4(frame);
    if (p.protocol == userplane::IpProtocol::UDP && p.ports &&
        (p.ports->dst == userplane::kGtpuPort || p.ports->src == userplane::kGtpuPort)) {
      const auto view = userplane::decode_gtpu(p.payload);
      p = userplane::parse_ipv4(view.payload);
    }
  } catch (const Error&) {
    ++unparseable_;
    return;
  }
  observe_ip(timestamp, p, frame.size());
}

void PassiveMonitor::observe_ip(Micros timestamp, const userplane::InnerPacket& p, std::size_t wire_bytes) {
  if (p.protocol != userplane::IpProtocol::ICMP || !p.icmp ||
      (p.icmp->type != kEchoRequest && p.icmp->type != kEchoReply)) {
    ++non_icmp_;
    return;
  }
  const bool request = p.icmp->type == kEchoRequest;
  const Ipv4Address initiator = request ? p.src : p.dst;
  const Ipv4Address responder = request ? p.dst : p.src;
  const std::uint32_t id = flow_session_id(p.protocol, responder, p.icmp->id);
  auto [it, inserted] = flows_.try_emplace(id);
  Flow& f = it->second;
  if (inserted) {
    f.order = flows_.size() - 1;
    f.session.session_id = id;
    f.session.left = initiator;
    f.session.right = responder;
  }
  ++f.session.packet_count;
  f.session.byte_count += wire_bytes;
  if (request) {
    f.pending[p.icmp->seq] = timestamp;
  } else if (auto req = f.pending.find(p.icmp->seq); req != f.pending.end()) {
    f.session.rtt_latest_ms = to_ms(timestamp - req->second);
    f.pending.erase(req);
  }
}

std::vector<PassiveSession> PassiveMonitor::sessions() const {
  std::vector<const Flow*> ordered;
  ordered.reserve(flows_.size());
  for (const auto& [id, f] : flows_) ordered.push_back(&f);
  std::sort(ordered.begin(), ordered.end(), [](const Flow* a, const Flow* b) { return a->order < b->order; });
  std::vector<PassiveSession> out;
  out.reserve(ordered.size());
  for (const Flow* f : ordered) out.push_back(f->session);
  return out;
}

std::vector<PassiveSession> passive_monitor(std::span<const userplane::CapturedPacket> packets) {
  PassiveMonitor m;
  for (const auto& p : packets) m.observe(p);
  return m.sessions();
}

std::string render_sessions(const PassiveMonitor& monitor) {
  const auto sessions = monitor.sessions();
  std::string out = std::to_string(sessions.size()) + " connections " + std::to_string(monitor.frames()) +
                    " packets " + human_bytes(monitor.bytes()) + " bytes\n";
  out += "TYPE ADDRESSES SESSION PAKS RTT\n";
  char rtt[32];
  for (const auto& s : sessions) {
    if (s.rtt_latest_ms) {
      std::snprintf(rtt, sizeof rtt, "%.1f ms", *s.rtt_latest_ms);
    } else {
      std::snprintf(rtt, sizeof rtt, "n/a");
    }
    out += "ICMP " + s.left.to_string() + " <-> " + s.right.to_string() + " " + std::to_string(s.session_id) + " " +
           std::to_string(s.packet_count) + " " + rtt + "\n";
  }
  return out;
}

}  // namespace nrusim::metrics
