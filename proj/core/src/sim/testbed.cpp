/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/sim/testbed.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "nrusim/access/cell_search.hpp"
#include "nrusim/access/lbt.hpp"
#include "nrusim/common/error.hpp"
#include "nrusim/common/rng.hpp"
#include "nrusim/metrics/passive_monitor.hpp"
#include "nrusim/rflink/capacity.hpp"
#include "nrusim/rflink/link_budget.hpp"
#include "nrusim/spectrum/raster.hpp"
#include "nrusim/userplane/gnb_relay.hpp"
#include "nrusim/userplane/gtpu.hpp"
#include "nrusim/userplane/packet.hpp"
#include "nrusim/userplane/upf.hpp"

namespace nrusim::sim {
namespace {

using nlohmann::json;
using spectrum::Link;
using userplane::CapturedPacket;
using userplane::InnerPacket;

constexpr Micros kProbeGap{1'000};
constexpr std::uint64_t kOccupancyStream = 0x6f63637570616e63ull;

Micros scaled(Micros base, double factor) {
  return Micros{static_cast<std::int64_t>(std::llround(static_cast<double>(base.count()) * factor))};
}

/// Processing slowdown from SDR streaming plus any co-located core.
double load_scale(const rflink::HostModel& h, SampleRate required) {
  return 1.0 + static_cast<double>(required.sps() + h.colocated_core_load.sps()) / static_cast<double>(h.capacity.sps());
}

Micros align_up(Micros t, Micros step) {
  const auto n = (t.count() + step.count() - 1) / step.count();
  return step * n;
}

json brief(const InnerPacket& p) {
  json j{{"src", p.src.to_string()}, {"dst", p.dst.to_string()}, {"bytes", p.wire_size()}};
  if (p.icmp) {
    j["icmp_type"] = p.icmp->type;
    j["icmp_seq"] = p.icmp->seq;
  }
  return j;
}

json brief(std::span<const std::uint8_t> ip) {
  try {
    return brief(userplane::parse_ipv4(ip));
  } catch (const Error&) {
    return json{{"bytes", ip.size()}};
  }
}

}  // namespace

struct Testbed::Impl {
  struct UeCtx {
    UeCtx(const NodeSpec* n, access::UeStateMachine m) : spec(n), sm(std::move(m)) {}

    const NodeSpec* spec = nullptr;
    access::UeStateMachine sm;
    rflink::HostModel host;
    const rflink::SdrModel* sdr = nullptr;
    double drop = 0.0;
    bool viable = true;
    double scale = 1.0;
    double rsrp = 0.0;
    std::unique_ptr<access::LbtGate> gate;
    std::optional<Ipv4Address> ip;
    std::uint32_t teid_ul = 0;
    std::uint32_t teid_dl = 0;
  };

  struct ExtCtx {
    std::string name;
    Micros one_way{0};
  };

  struct PingProbe {
    std::string from;
    Ipv4Address dst;
    std::uint16_t id = 0;
    std::map<std::uint16_t, Micros> sent_at;
    std::vector<double> rtts;
  };

  Impl(Scenario s, const Environment& e, Calibration c);

  void capture(const std::string& tap, std::vector<std::uint8_t> bytes) {
    if (taps.count(tap) != 0) captures[tap].push_back(CapturedPacket{sim.now(), std::move(bytes)});
  }

  std::optional<Micros> radio(Link dir, Micros ready, access::LbtGate& gate, const UeCtx& ue);
  void ue_send(UeCtx& ue, const InnerPacket& pkt);
  void gnb_uplink(UeCtx& ue, const std::vector<std::uint8_t>& inner);
  void upf_output(userplane::Upf::Output out);
  void gnb_downlink(const userplane::SessionRoute& target, const std::vector<std::uint8_t>& gtpu);
  void ue_receive(UeCtx& ue, const std::vector<std::uint8_t>& ip);
  void external_receive(Ipv4Address address, const std::vector<std::uint8_t>& ip);
  UeCtx* ue_by_ip(Ipv4Address ip);
  void check_invariants() const;

  void attach_all();
  void attach_next(std::size_t index);
  metrics::PingStats ping(const std::string& from, Ipv4Address dst, std::uint32_t count, Micros interval,
                          std::size_t data_size);
  metrics::ThroughputResult throughput_test(const std::string& ue, Link dir, Micros duration);
  metrics::ScenarioReport report() const;
  Ipv4Address resolve(const std::string& target) const;

  Scenario sc;
  const Environment& env;
  Calibration cal;
  EventLog log;
  Simulator sim{log};
  Rng rng;

  const spectrum::BandPlan* band = nullptr;
  Frequency carrier;
  spectrum::Gscn gscn;
  Micros slot{0};
  int n_rb = 0;
  SampleRate required;

  rflink::HostModel gnb_host;
  const rflink::SdrModel* gnb_sdr = nullptr;
  double gnb_drop = 0.0;
  double gnb_scale = 1.0;
  double core_scale = 1.0;

  access::ChannelOccupancy occupancy;
  std::unique_ptr<access::LbtGate> gnb_gate;
  corenet::CoreNetwork core;
  userplane::Upf upf;
  userplane::GnbRelay relay;

  std::map<std::string, UeCtx> ues;
  std::vector<std::string> ue_order;
  std::map<std::uint32_t, ExtCtx> externals;
  std::optional<PingProbe> probe;
  std::set<std::string> taps;
  std::map<std::string, std::vector<CapturedPacket>> captures;
  std::vector<metrics::PingResult> pings;
  std::vector<metrics::ThroughputResult> tputs;
  bool attached = false;
};

namespace {

corenet::SubscriberStore make_store(const Scenario& s) {
  corenet::SubscriberStore store;
  for (const auto& r : s.core.subscribers) store.add(r);
  return store;
}

userplane::RouteTable make_routes(const Scenario& s) {
  userplane::RouteTable r;
  r.ue_pool = s.core.config.ue_pool;
  r.pool_gateway = s.core.config.ue_pool.first_host();
  r.n6_address = s.core.config.upf_address;
  r.external_gateway = s.core.config.core_subnet.first_host();
  return r;
}

}  // namespace

Testbed::Impl::Impl(Scenario s, const Environment& e, Calibration c)
    : sc(std::move(s)),
      env(e),
      cal(std::move(c)),
      rng(sc.seed),
      core(sc.core.config, make_store(sc), sc.seed),
      upf(make_routes(sc)) {
  const auto& cell = sc.cell;
  band = &env.bands.find(cell.band_id);
  carrier = spectrum::arfcn_to_frequency(cell.arfcn);
  gscn = cell.gscn ? *cell.gscn : *spectrum::nearest_gscn_at_or_below(*band, carrier);
  slot = rflink::slot_duration(cell.scs_khz);
  n_rb = rflink::resource_blocks(cell.bandwidth, cell.scs_khz).value();
  required = rflink::required_sampling_rate(cell.bandwidth);

  const auto& gnb = sc.gnb();
  const auto& core_node = sc.core_node();
  const bool colocated = core_node.colocated_with == gnb.name;
  gnb_host = env.hardware.host(gnb.host).instantiate(colocated);
  gnb_sdr = &env.hardware.sdr(gnb.sdr);
  gnb_drop = rflink::sample_drop_fraction(gnb_host, required);
  gnb_scale = load_scale(gnb_host, required);
  if (colocated) {
    core_scale = gnb_scale;
  } else {
    const auto h = env.hardware.host(core_node.host).instantiate(true);
    core_scale = 1.0 + static_cast<double>(h.colocated_core_load.sps()) / static_cast<double>(h.capacity.sps());
  }

  for (const auto& b : sc.occupancy.bursts) occupancy.add(b);
  if (sc.occupancy.wifi) {
    const auto& w = *sc.occupancy.wifi;
    Rng orng(mix64(sc.seed ^ kOccupancyStream));
    const Micros horizon = sc.planned_traffic_time() + Micros{60'000'000};
    Micros t{0};
    while (t < horizon) {
      t += Micros{static_cast<std::int64_t>(std::llround(orng.exponential(static_cast<double>(w.mean_gap.count()))))};
      const auto len = std::max<std::int64_t>(
          1, std::llround(orng.exponential(static_cast<double>(w.mean_duration.count()))));
      occupancy.add(access::Burst{t, t + Micros{len}, w.power_dbm});
      t += Micros{len};
    }
  }
  gnb_gate = std::make_unique<access::LbtGate>(occupancy, cell.lbt);

  const bool gnb_viable = rflink::link_viable(gnb_drop, cal.viability_threshold);
  for (const auto* n : sc.nodes_with(NodeRole::Ue)) {
    UeCtx u(n, access::UeStateMachine(n->name, n->imsi));
    u.host = env.hardware.host(n->host).instantiate(false);
    u.sdr = &env.hardware.sdr(n->sdr);
    u.drop = rflink::sample_drop_fraction(u.host, required);
    u.viable = gnb_viable && rflink::link_viable(u.drop, cal.viability_threshold);
    u.scale = load_scale(u.host, required);
    u.rsrp = rflink::compute_rsrp(cell.tx_power_dbm, cell.attenuation_factor, *n->medium, carrier, cal.radio);
    u.gate = std::make_unique<access::LbtGate>(occupancy, cell.lbt);
    ue_order.push_back(n->name);
    ues.emplace(n->name, std::move(u));
  }
  bool all_viable = gnb_viable;
  for (const auto& [name, u] : ues) all_viable = all_viable && u.viable;
  relay.set_policy(userplane::RelayPolicy{all_viable, cal.small_packet_limit, Micros{0}});

  for (const auto* n : sc.nodes_with(NodeRole::External)) {
    externals[n->address->value()] = ExtCtx{n->name, n->one_way_delay.value_or(cal.latency.external_one_way)};
  }
  taps.insert(sc.taps.begin(), sc.taps.end());
}

Testbed::Impl::UeCtx* Testbed::Impl::ue_by_ip(Ipv4Address ip) {
  for (auto& [name, u] : ues) {
    if (u.ip && *u.ip == ip) return &u;
  }
  return nullptr;
}

void Testbed::Impl::check_invariants() const {
  core.check_invariants();
  for (const auto& [name, u] : ues) u.sm.state().check();
}

std::optional<Micros> Testbed::Impl::radio(Link dir, Micros ready, access::LbtGate& gate, const UeCtx& ue) {
  const auto kind = dir == Link::DL ? access::SlotKind::DL : access::SlotKind::UL;
  Micros t = ready + (dir == Link::UL ? cal.latency.ul_grant_delay : Micros{0});
  const Micros give_up = t + cal.latency.lbt_give_up;
  const Micros cca = sc.cell.lbt.cca_duration;
  for (;;) {
    const std::int64_t s = access::next_slot_of(sc.cell.tdd, kind, align_up(t, slot) / slot);
    const Micros start = slot * s;
    if (start > give_up) return std::nullopt;
    const auto d = gate.request(start - cca, give_up, rng);
    if (!d.granted) return std::nullopt;
    if (d.at > start) {
      t = d.at;
      continue;
    }
    Micros arrival = start + slot;
    if (cal.latency.jitter_mean.count() > 0) {
      arrival += Micros{static_cast<std::int64_t>(
          std::llround(rng.exponential(static_cast<double>(cal.latency.jitter_mean.count()))))};
    }
    if (!ue.spec->medium->is_cable()) arrival += cal.latency.over_air_extra;
    return arrival;
  }
}

void Testbed::Impl::ue_send(UeCtx& ue, const InnerPacket& pkt) {
  auto bytes = userplane::encode_ipv4(pkt);
  capture(ue.spec->name, bytes);
  const Micros ready = sim.now() + scaled(cal.latency.ue_processing, ue.scale);
  const auto arrival = radio(Link::UL, ready, *ue.gate, ue);
  if (!arrival) {
    log.record(sim.now(), ue.spec->name, "ul.lbt_drop", brief(pkt));
    return;
  }
  sim.at(*arrival, "gnb", "ul.rx", brief(pkt), [this, &ue, bytes = std::move(bytes)] { gnb_uplink(ue, bytes); });
}

void Testbed::Impl::gnb_uplink(UeCtx& ue, const std::vector<std::uint8_t>& inner) {
  const auto r = relay.relay(Link::UL, inner, ue.teid_ul);
  if (!r.bytes) {
    log.record(sim.now(), "gnb", "relay.drop", json{{"bytes", inner.size()}, {"reason", "link not viable"}});
    return;
  }
  const Micros t = sim.now() + scaled(cal.latency.gnb_processing, gnb_scale);
  sim.at(t, "gnb", "n3.tx", json{{"teid", ue.teid_ul}, {"bytes", r.bytes->size()}},
         [this, &ue, gtpu = *r.bytes, inner] {
           capture("n3", userplane::encode_n3_frame(sc.core.gnb_n3_address, sc.core.config.upf_address, ue.teid_ul,
                                                    inner));
           sim.after(scaled(cal.latency.core_processing, core_scale), "upf", "n3.rx", json{{"teid", ue.teid_ul}},
                     [this, gtpu] { upf_output(upf.from_n3(gtpu)); });
         });
}

void Testbed::Impl::upf_output(userplane::Upf::Output out) {
  using U = userplane::Upf;
  if (auto* g = std::get_if<U::ToGnb>(&out)) {
    const auto payload = userplane::decode_gtpu(g->gtpu).payload;
    capture("n3", userplane::encode_n3_frame(sc.core.config.upf_address, sc.core.gnb_n3_address,
                                             g->target.teid_downlink, payload));
    const Micros t = sim.now() + scaled(cal.latency.gnb_processing, gnb_scale);
    sim.at(t, "gnb", "n3.rx", json{{"teid", g->target.teid_downlink}, {"ue_ip", g->target.ue_ip.to_string()}},
           [this, target = g->target, gtpu = std::move(g->gtpu)] { gnb_downlink(target, gtpu); });
  } else if (auto* n6 = std::get_if<U::ToN6>(&out)) {
    capture("n6", n6->ip);
    const auto parsed = userplane::parse_ipv4(n6->ip);
    const auto ext = externals.find(parsed.dst.value());
    if (ext == externals.end()) {
      log.record(sim.now(), "upf", "n6.unreachable", brief(parsed));
      return;
    }
    sim.after(ext->second.one_way, ext->second.name, "n6.rx", brief(parsed),
              [this, addr = parsed.dst, ip = std::move(n6->ip)] { external_receive(addr, ip); });
  } else if (auto* local = std::get_if<U::ToCoreHost>(&out)) {
    const auto& p = local->packet;
    if (p.icmp && p.icmp->type == userplane::kIcmpEchoRequest) {
      sim.after(Micros{0}, sc.core_node().name, "echo.reply", brief(p),
                [this, reply = userplane::make_echo_reply(p)] { upf_output(upf.from_core_host(reply)); });
    } else {
      log.record(sim.now(), sc.core_node().name, "sink", brief(p));
    }
  } else {
    log.record(sim.now(), "upf", "drop", json{{"reason", std::get<U::Dropped>(out).reason}});
  }
}

void Testbed::Impl::external_receive(Ipv4Address address, const std::vector<std::uint8_t>& ip) {
  const auto p = userplane::parse_ipv4(ip);
  const auto& ext = externals.at(address.value());
  if (!(p.icmp && p.icmp->type == userplane::kIcmpEchoRequest && p.dst == address)) {
    log.record(sim.now(), ext.name, "sink", brief(p));
    return;
  }
  auto reply = userplane::encode_ipv4(userplane::make_echo_reply(p));
  sim.after(ext.one_way, "upf", "n6.in", brief(reply), [this, reply] {
    capture("n6", reply);
    sim.after(scaled(cal.latency.core_processing, core_scale), "upf", "n6.rx", json{},
              [this, reply] { upf_output(upf.from_n6(reply)); });
  });
}

void Testbed::Impl::gnb_downlink(const userplane::SessionRoute& target, const std::vector<std::uint8_t>& gtpu) {
  const auto r = relay.relay(Link::DL, gtpu);
  if (!r.bytes) {
    log.record(sim.now(), "gnb", "relay.drop", json{{"bytes", gtpu.size()}, {"reason", "link not viable"}});
    return;
  }
  UeCtx* ue = ue_by_ip(target.ue_ip);
  if (ue == nullptr) {
    log.record(sim.now(), "gnb", "dl.no_bearer", json{{"ue_ip", target.ue_ip.to_string()}});
    return;
  }
  const auto arrival = radio(Link::DL, sim.now(), *gnb_gate, *ue);
  if (!arrival) {
    log.record(sim.now(), "gnb", "dl.lbt_drop", json{{"ue", ue->spec->name}});
    return;
  }
  const Micros t = *arrival + scaled(cal.latency.ue_processing, ue->scale);
  sim.at(t, ue->spec->name, "dl.rx", brief(*r.bytes), [this, ue, ip = *r.bytes] { ue_receive(*ue, ip); });
}

void Testbed::Impl::ue_receive(UeCtx& ue, const std::vector<std::uint8_t>& ip) {
  capture(ue.spec->name, ip);
  const auto p = userplane::parse_ipv4(ip);
  if (!p.icmp || !ue.ip || p.dst != *ue.ip) return;
  if (p.icmp->type == userplane::kIcmpEchoRequest) {
    ue_send(ue, userplane::make_echo_reply(p));
    return;
  }
  if (p.icmp->type != userplane::kIcmpEchoReply || !probe || probe->from != ue.spec->name || probe->id != p.icmp->id) {
    return;
  }
  const auto sent = probe->sent_at.find(p.icmp->seq);
  if (sent == probe->sent_at.end()) return;
  const Micros rtt = sim.now() - sent->second;
  probe->sent_at.erase(sent);
  probe->rtts.push_back(to_ms(rtt));
  log.record(sim.now(), ue.spec->name, "ping.reply",
             json{{"seq", p.icmp->seq}, {"rtt_us", rtt.count()}, {"from", p.src.to_string()}});
}

void Testbed::Impl::attach_all() {
  if (attached) return;
  attached = true;
  // Earlier sessions still holding the lowest pool addresses.
  for (int i = 0; i < sc.core.prior_sessions; ++i) {
    char imsi[16];
    std::snprintf(imsi, sizeof imsi, "99999%010d", i + 1);
    core.subscribers().add(corenet::SubscriberRecord{imsi, true});
    (void)core.register_ue(imsi);
    const auto& s = core.establish_pdu_session(imsi);
    log.record(sim.now(), "smf", "prior_session", json{{"ip", s.ip.to_string()}});
  }
  for (const auto& f : sc.faults) {
    sim.at(f.at, "fault", "stale-event", json{}, [this] {
      sim.at(sim.now() - Micros{1}, "fault", "stale", json{}, [] {});
    });
  }
  attach_next(0);
  sim.run();
  check_invariants();
}

void Testbed::Impl::attach_next(std::size_t index) {
  if (index >= ue_order.size()) return;
  UeCtx& ue = ues.at(ue_order[index]);
  const std::string& name = ue.spec->name;
  sim.after(Micros{0}, name, "power_on", json{{"imsi", ue.spec->imsi}}, [this, &ue, index, name] {
    ue.sm.start_scan();
    const auto search = access::ue_cell_search(*band, sc.cell.on_air ? std::optional(gscn) : std::nullopt);
    const Micros scan = cal.latency.cell_search_step * static_cast<std::int64_t>(search.steps);
    json p{{"steps", search.steps}};
    if (search.found) p["gscn"] = search.found->value;
    sim.after(scan, name, "cell_search", p, [this, &ue, index, name, search] {
      if (!search.found) {
        ue.sm.fail(access::AttachFailure{access::AttachFailureKind::CellNotFound,
                                         "no cell after " + std::to_string(search.steps) + " GSCN candidates"});
        log.record(sim.now(), name, "attach.failed", json{{"phase", "SCANNING"}, {"reason", "cell-not-found"}});
        check_invariants();
        attach_next(index + 1);
        return;
      }
      ue.sm.synced(*search.found, search.steps);
      check_invariants();
      const Micros hop = scaled(cal.latency.gnb_processing, gnb_scale) + scaled(cal.latency.core_processing, core_scale);
      sim.after(hop, "amf", "registration", json{{"imsi", ue.spec->imsi}}, [this, &ue, index, name, hop] {
        const auto reg = core.register_ue(ue.spec->imsi);
        if (!reg.accepted) {
          const std::string why(corenet::to_string(*reg.reason));
          ue.sm.fail(access::AttachFailure{access::AttachFailureKind::RegistrationRejected, why});
          log.record(sim.now(), name, "attach.failed", json{{"phase", "SYNCED"}, {"reason", why}});
          check_invariants();
          attach_next(index + 1);
          return;
        }
        ue.sm.registered();
        sim.after(hop, "smf", "pdu_session", json{{"imsi", ue.spec->imsi}}, [this, &ue, index, name] {
          try {
            const auto& s = core.establish_pdu_session(ue.spec->imsi);
            ue.ip = s.ip;
            ue.teid_ul = s.teid_uplink;
            ue.teid_dl = s.teid_downlink;
            upf.routes().add_session(
                userplane::SessionRoute{s.id, s.ip, s.teid_uplink, s.teid_downlink, sc.gnb().name});
            ue.sm.session_established(s);
            log.record(sim.now(), name, "attach.done",
                       json{{"ip", s.ip.to_string()},
                            {"interface", s.interface_name},
                            {"teid_ul", s.teid_uplink},
                            {"teid_dl", s.teid_downlink}});
          } catch (const corenet::AllocationError& e) {
            ue.sm.fail(access::AttachFailure{access::AttachFailureKind::SessionRejected, e.what()});
            log.record(sim.now(), name, "attach.failed", json{{"phase", "REGISTERED"}, {"reason", e.what()}});
          }
          check_invariants();
          attach_next(index + 1);
        });
      });
    });
  });
}

Ipv4Address Testbed::Impl::resolve(const std::string& target) const {
  if (target == "gateway") return core.pool().gateway();
  if (const auto* n = sc.find_node(target)) {
    if (n->role == NodeRole::External) return *n->address;
    if (n->role == NodeRole::Ue) {
      const auto& u = ues.at(n->name);
      return u.ip.value_or(Ipv4Address{});
    }
    throw ConfigError("node '" + target + "' cannot be addressed");
  }
  return Ipv4Address::parse(target);
}

metrics::PingStats Testbed::Impl::ping(const std::string& from, Ipv4Address dst, std::uint32_t count, Micros interval,
                                       std::size_t data_size) {
  UeCtx& ue = ues.at(from);
  PingProbe pr;
  pr.from = from;
  pr.dst = dst;
  pr.id = static_cast<std::uint16_t>(rng.uniform_int(1, 0xFFFF));
  const Micros t0 = sim.now() + kProbeGap;
  log.record(sim.now(), from, "ping.start",
             json{{"dst", dst.to_string()}, {"count", count}, {"interval_us", interval.count()}, {"id", pr.id}});
  if (!ue.ip || dst == Ipv4Address{}) {
    log.record(sim.now(), from, "ping.no_route", json{{"dst", dst.to_string()}});
    return metrics::summarize_ping({}, count);
  }
  probe = std::move(pr);
  const Micros period = slot * sc.cell.tdd.period;
  for (std::uint32_t k = 0; k < count; ++k) {
    const auto seq = static_cast<std::uint16_t>(k + 1);
    const Micros offset{static_cast<std::int64_t>(rng.uniform_int(0, static_cast<std::uint64_t>(period.count() - 1)))};
    sim.at(t0 + interval * static_cast<std::int64_t>(k) + offset, from, "ping.request", json{{"seq", seq}},
           [this, &ue, seq, dst, data_size] {
             probe->sent_at[seq] = sim.now();
             ue_send(ue, userplane::make_echo_request(*ue.ip, dst, probe->id, seq, data_size));
           });
  }
  sim.run();
  check_invariants();
  auto stats = metrics::summarize_ping(probe->rtts, count);
  log.record(sim.now(), from, "ping.done", json{{"sent", stats.sent}, {"received", stats.received}});
  probe.reset();
  return stats;
}

metrics::ThroughputResult Testbed::Impl::throughput_test(const std::string& name, Link dir, Micros duration) {
  UeCtx& ue = ues.at(name);
  const auto& tc = cal.throughput;
  metrics::ThroughputMeter meter(dir, tc.interval, tc.window);
  metrics::ThroughputResult result;
  result.ue = name;
  const bool path = ue.sm.state().phase == access::UePhase::SESSION_ACTIVE;
  const bool carry = path && ue.viable;
  double eff = rflink::sdr_streaming_efficiency(*gnb_sdr, sc.cell.bandwidth, tc.sdr_rolloff_k);
  if (dir == Link::DL) eff = std::min(eff, rflink::sdr_streaming_efficiency(*ue.sdr, sc.cell.bandwidth, tc.sdr_rolloff_k));
  if (ue.spec->medium->is_cable()) eff *= tc.cable_efficiency;
  const double bits_per_re = dir == Link::DL ? tc.bits_per_re_dl : tc.bits_per_re_ul;
  const double slot_bits = static_cast<double>(n_rb) * 12.0 * 14.0 * bits_per_re * eff;
  const auto kind = dir == Link::DL ? access::SlotKind::DL : access::SlotKind::UL;
  access::LbtGate& gate = dir == Link::DL ? *gnb_gate : *ue.gate;
  const std::string actor = dir == Link::DL ? sc.gnb().name : name;

  const Micros t0 = align_up(sim.now() + kProbeGap, tc.interval);
  const auto intervals = (duration.count() + tc.interval.count() - 1) / tc.interval.count();
  log.record(sim.now(), name, "iperf.start",
             json{{"direction", spectrum::to_string(dir)},
                  {"path", path},
                  {"viable", ue.viable},
                  {"slot_bits", slot_bits},
                  {"intervals", intervals}});
  auto skip_until = std::make_shared<std::int64_t>(-1);
  for (std::int64_t i = 0; i < intervals; ++i) {
    const Micros start = t0 + tc.interval * i;
    sim.at(start, actor, "iperf.interval", json{{"index", i}}, [&, i, start, skip_until] {
      const double fade = rng.uniform(tc.fluctuation_min, 1.0);
      const std::int64_t first = start / slot;
      const std::int64_t last = (start + tc.interval) / slot;
      std::uint64_t granted = 0;
      std::uint64_t lost = 0;
      for (std::int64_t s = first; s < last; ++s) {
        if (access::schedule_tdd(sc.cell.tdd, s) != kind) continue;
        if (access::schedule_tdd(sc.cell.tdd, s - 1) != kind) {
          std::int64_t end = s;
          while (access::schedule_tdd(sc.cell.tdd, end) == kind) ++end;
          const Micros burst_start = slot * s;
          const auto d = gate.request(burst_start - sc.cell.lbt.cca_duration, slot * end, rng);
          *skip_until = d.granted ? s + (d.at - burst_start + slot - Micros{1}) / slot : end;
        }
        if (s < *skip_until) {
          ++lost;
          continue;
        }
        ++granted;
      }
      const double bits = carry ? static_cast<double>(granted) * slot_bits * fade : 0.0;
      meter.record_interval(static_cast<std::size_t>(i), bits);
      if (carry) {
        result.slots_granted += granted;
        result.slots_lost_to_lbt += lost;
      }
      log.record(sim.now(), actor, "iperf.delivered",
                 json{{"index", i}, {"bits", bits}, {"slots", carry ? granted : 0}, {"lbt_lost", lost}});
    });
  }
  sim.run();
  check_invariants();
  result.stats = meter.summarize();
  if (!carry) result.stats = metrics::ThroughputStats{dir, 0.0, 0.0, 0.0};
  log.record(sim.now(), name, "iperf.done",
             json{{"peak_mbps", result.stats.peak},
                  {"avg_low_mbps", result.stats.avg_low},
                  {"avg_high_mbps", result.stats.avg_high}});
  return result;
}

metrics::ScenarioReport Testbed::Impl::report() const {
  metrics::ScenarioReport r;
  r.name = sc.name;
  r.seed = sc.seed;
  r.seed_defaulted = sc.seed_defaulted;
  r.gnb_drop_fraction = gnb_drop;
  r.link_viable = relay.policy().viable;
  for (const auto& name : ue_order) {
    const auto& u = ues.at(name);
    r.links.push_back(metrics::LinkSummary{name, u.spec->medium->describe(), metrics::report_round(u.rsrp), u.drop,
                                           u.viable});
    const auto& st = u.sm.state();
    metrics::AttachSummary a;
    a.ue = name;
    a.phase = std::string(access::to_string(st.phase));
    if (st.session) a.ip = st.session->ip.to_string();
    if (st.failure) a.failure = std::string(access::to_string(st.failure->kind)) + ": " + st.failure->detail;
    if (st.found_gscn) a.gscn = st.found_gscn->value;
    a.scan_steps = st.scan_steps;
    r.attach.push_back(std::move(a));
  }
  for (auto p : pings) {
    auto& s = p.stats;
    s.min = metrics::report_round(s.min);
    s.max = metrics::report_round(s.max);
    s.avg = metrics::report_round(s.avg);
    s.mdev = metrics::report_round(s.mdev);
    r.pings.push_back(std::move(p));
  }
  for (auto t : tputs) {
    t.stats.peak = metrics::report_round(t.stats.peak);
    t.stats.avg_low = metrics::report_round(t.stats.avg_low);
    t.stats.avg_high = metrics::report_round(t.stats.avg_high);
    r.throughput.push_back(std::move(t));
  }
  for (const auto& tap : taps) {
    metrics::PassiveMonitor m;
    if (const auto it = captures.find(tap); it != captures.end()) {
      for (const auto& pkt : it->second) m.observe(pkt);
    }
    metrics::TapSummary ts{tap, m.frames(), m.unparseable(), m.sessions()};
    for (auto& s : ts.sessions) {
      if (s.rtt_latest_ms) s.rtt_latest_ms = metrics::report_round(*s.rtt_latest_ms);
    }
    r.taps.push_back(std::move(ts));
  }
  if (sc.seed_defaulted) r.notes.push_back("seed not given; defaulted to 0");
  if (!r.link_viable) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "gNB host drops %.4g of samples at %.0f MSPS; bulk transfer impossible", gnb_drop,
                  required.msps());
    r.notes.push_back(buf);
  }
  r.event_count = log.size();
  r.event_log_digest = log.digest();
  return r;
}

Testbed::Testbed(Scenario scenario, const Environment& env, Calibration calibration)
    : impl_(std::make_unique<Impl>(std::move(scenario), env, std::move(calibration))) {}

Testbed::~Testbed() = default;

void Testbed::attach_all() { impl_->attach_all(); }

metrics::PingStats Testbed::ping(const std::string& from, Ipv4Address dst, std::uint32_t count, Micros interval,
                                 std::size_t data_size) {
  impl_->attach_all();
  return impl_->ping(from, dst, count, interval, data_size);
}

metrics::ThroughputResult Testbed::throughput_test(const std::string& ue, Link direction, Micros duration) {
  impl_->attach_all();
  return impl_->throughput_test(ue, direction, duration);
}

metrics::ScenarioReport Testbed::run() {
  auto& im = *impl_;
  im.log.record(im.sim.now(), "scenario", "start",
                json{{"name", im.sc.name},
                     {"seed", im.sc.seed},
                     {"carrier_mhz", im.carrier.to_mhz_string()},
                     {"gscn", im.gscn.value},
                     {"gnb_drop_fraction", im.gnb_drop},
                     {"link_viable", im.relay.policy().viable}});
  for (const auto& name : im.ue_order) {
    const auto& u = im.ues.at(name);
    im.log.record(im.sim.now(), name, "link.budget",
                  json{{"rsrp_dbm", u.rsrp}, {"drop_fraction", u.drop}, {"viable", u.viable}});
  }
  im.attach_all();
  for (const auto& p : im.sc.traffic) {
    if (p.kind == ProbeKind::Ping) {
      const auto dst = im.resolve(p.to);
      im.pings.push_back(metrics::PingResult{p.from, p.to, im.ping(p.from, dst, p.count, p.interval, p.data_size)});
    } else {
      im.tputs.push_back(im.throughput_test(p.from, p.direction, p.duration));
    }
  }
  im.log.record(im.sim.now(), "scenario", "end", json{{"events", im.sim.executed()}});
  return im.report();
}

Ipv4Address Testbed::resolve(const std::string& target) const { return impl_->resolve(target); }
const Scenario& Testbed::scenario() const { return impl_->sc; }
const EventLog& Testbed::log() const { return impl_->log; }
const access::UeState& Testbed::ue_state(const std::string& ue) const { return impl_->ues.at(ue).sm.state(); }
const corenet::CoreNetwork& Testbed::core() const { return impl_->core; }
const userplane::UpfCounters& Testbed::upf_counters() const { return impl_->upf.counters(); }
const std::map<std::string, std::vector<CapturedPacket>>& Testbed::captures() const { return impl_->captures; }
double Testbed::gnb_drop_fraction() const { return impl_->gnb_drop; }
bool Testbed::link_viable(const std::string& ue) const { return impl_->ues.at(ue).viable; }
double Testbed::rsrp_dbm(const std::string& ue) const { return impl_->ues.at(ue).rsrp; }
Micros Testbed::now() const { return impl_->sim.now(); }

RunArtifacts run_scenario(const Scenario& scenario, const Environment& env) {
  Testbed tb(scenario, env, Calibration::load(scenario.calibration));
  try {
    RunArtifacts a;
    a.report = tb.run();
    a.event_log = tb.log().text();
    a.captures = tb.captures();
    return a;
  } catch (const InvariantBreach& e) {
    throw RunAborted(e.what(), tb.log().text());
  }
}

}  // namespace nrusim::sim
