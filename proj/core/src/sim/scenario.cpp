/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/sim/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <set>

#include "common/yaml_support.hpp"
#include "nrusim/rflink/capacity.hpp"
#include "nrusim/spectrum/raster.hpp"

#ifndef NRUSIM_INSTALLED_DATA_DIR
#define NRUSIM_INSTALLED_DATA_DIR "/usr/local/share/nrusim"
#endif
#ifndef NRUSIM_BUILD_DATA_DIR
#define NRUSIM_BUILD_DATA_DIR "data"
#endif

namespace nrusim::sim {
namespace {

namespace fs = std::filesystem;
using detail::as;
using detail::get;
using detail::get_opt;
using detail::line_of;

class Parser {
 public:
  Parser(Scenario& s, std::string base_dir, const Environment& env)
      : s_(s), base_dir_(std::move(base_dir)), env_(env) {}

  void parse(const YAML::Node& root);

 private:
  int mark(const std::string& field, const YAML::Node& n) {
    const int l = line_of(n);
    s_.field_lines[field] = l;
    return l;
  }

  template <typename F>
  auto converted(const std::string& field, const YAML::Node& n, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError(field, line_of(n), e.what());
    }
  }

  Frequency mhz(const YAML::Node& parent, const std::string& key, const std::string& path) {
    const auto n = detail::require(parent, key, path);
    mark(path + "." + key, n);
    return converted(path + "." + key, n, [&] { return Frequency::parse_mhz(as<std::string>(n, path + "." + key)); });
  }

  Micros micros(const YAML::Node& n, const std::string& field) {
    const auto v = as<std::int64_t>(n, field);
    if (v < 0) throw ValidationError(field, line_of(n), "must be non-negative");
    return Micros{v};
  }

  void parse_cell(const YAML::Node& n);
  void parse_core(const YAML::Node& n);
  void parse_nodes(const YAML::Node& n);
  rflink::LinkMedium parse_medium(const YAML::Node& n, const std::string& path);
  void parse_traffic(const YAML::Node& n);
  void parse_occupancy(const YAML::Node& n);
  void parse_faults(const YAML::Node& n);

  Scenario& s_;
  std::string base_dir_;
  const Environment& env_;
};

void Parser::parse(const YAML::Node& root) {
  if (!root.IsMap()) throw ValidationError("scenario", line_of(root), "top level must be a mapping");
  const int version = get<int>(root, "schema_version", "scenario");
  if (version != Scenario::kSchemaVersion) {
    throw ValidationError("schema_version", line_of(root["schema_version"]),
                          "unsupported schema " + std::to_string(version));
  }
  s_.name = get<std::string>(root, "name", "scenario");
  s_.description = get_opt<std::string>(root, "description", "scenario").value_or("");
  if (const auto seed = get_opt<std::uint64_t>(root, "seed", "scenario")) {
    s_.seed = *seed;
  } else {
    s_.seed = 0;
    s_.seed_defaulted = true;
  }
  const auto cal = get_opt<std::string>(root, "calibration", "scenario").value_or("default");
  if (cal == "default") {
    s_.calibration = env_.default_calibration();
  } else {
    const fs::path p(cal);
    s_.calibration = p.is_absolute() ? p.string() : (fs::path(base_dir_) / p).lexically_normal().string();
  }
  if (root["duration_s"]) {
    mark("duration_s", root["duration_s"]);
    const auto d = get<double>(root, "duration_s", "scenario");
    if (!(d > 0)) throw ValidationError("duration_s", line_of(root["duration_s"]), "must be positive");
    s_.duration = Micros{static_cast<std::int64_t>(std::llround(d * 1e6))};
  }
  parse_cell(detail::require(root, "cell", "scenario"));
  parse_core(detail::require(root, "core", "scenario"));
  parse_nodes(detail::require(root, "nodes", "scenario"));
  if (root["traffic"]) parse_traffic(root["traffic"]);
  if (root["occupancy"]) parse_occupancy(root["occupancy"]);
  if (root["taps"]) {
    mark("taps", root["taps"]);
    s_.taps = as<std::vector<std::string>>(root["taps"], "taps");
  }
  if (root["faults"]) parse_faults(root["faults"]);
}

void Parser::parse_cell(const YAML::Node& n) {
  const std::string p = "cell";
  mark(p, n);
  auto& c = s_.cell;
  c.band_id = get<std::string>(n, "band", p);
  mark("cell.band", n["band"]);
  c.arfcn = spectrum::Arfcn{get<std::uint32_t>(n, "arfcn", p)};
  mark("cell.arfcn", n["arfcn"]);
  c.bandwidth = mhz(n, "bandwidth_mhz", p);
  c.scs_khz = get<int>(n, "scs_khz", p);
  mark("cell.scs_khz", n["scs_khz"]);
  c.tx_power_dbm = get<double>(n, "tx_power_dbm", p);
  c.attenuation_factor = get<double>(n, "attenuation_factor", p);
  mark("cell.attenuation_factor", n["attenuation_factor"]);
  if (n["gscn"]) {
    c.gscn = spectrum::Gscn{get<std::uint32_t>(n, "gscn", p)};
    mark("cell.gscn", n["gscn"]);
  }
  c.on_air = get_opt<bool>(n, "on_air", p).value_or(true);
  c.eirp_mw = get_opt<double>(n, "eirp_mw", p);
  if (n["eirp_mw"]) mark("cell.eirp_mw", n["eirp_mw"]);
  c.indoor = get_opt<bool>(n, "indoor", p).value_or(true);
  c.jurisdiction = get_opt<std::string>(n, "jurisdiction", p).value_or("AU");
  c.regulatory_override = get_opt<bool>(n, "regulatory_override", p).value_or(false);
  if (const auto tdd = n["tdd"]) {
    mark("cell.tdd", tdd);
    c.tdd.period = get<int>(tdd, "period", "cell.tdd");
    c.tdd.dl_slots = get<int>(tdd, "dl_slots", "cell.tdd");
    c.tdd.ul_slots = get<int>(tdd, "ul_slots", "cell.tdd");
  }
  if (const auto lbt = n["lbt"]) {
    mark("cell.lbt", lbt);
    const std::string lp = "cell.lbt";
    if (lbt["cca_threshold_dbm"]) c.lbt.cca_threshold_dbm = get<double>(lbt, "cca_threshold_dbm", lp);
    if (lbt["cca_us"]) c.lbt.cca_duration = micros(lbt["cca_us"], lp + ".cca_us");
    if (lbt["cw_min"]) c.lbt.cw_min = get<std::uint32_t>(lbt, "cw_min", lp);
    if (lbt["cw_max"]) c.lbt.cw_max = get<std::uint32_t>(lbt, "cw_max", lp);
    if (lbt["backoff_slot_us"]) c.lbt.backoff_slot = micros(lbt["backoff_slot_us"], lp + ".backoff_slot_us");
  }
}

void Parser::parse_core(const YAML::Node& n) {
  const std::string p = "core";
  mark(p, n);
  auto& core = s_.core;
  const auto cidr = [&](const char* key, Cidr& out) {
    if (!n[key]) return;
    mark(p + "." + key, n[key]);
    out = converted(p + "." + key, n[key], [&] { return Cidr::parse(as<std::string>(n[key], p + "." + key)); });
  };
  const auto addr = [&](const char* key, Ipv4Address& out) {
    if (!n[key]) return;
    mark(p + "." + key, n[key]);
    out = converted(p + "." + key, n[key],
                    [&] { return Ipv4Address::parse(as<std::string>(n[key], p + "." + key)); });
  };
  cidr("ue_pool", core.config.ue_pool);
  cidr("core_subnet", core.config.core_subnet);
  addr("upf_address", core.config.upf_address);
  addr("amf_address", core.config.amf_address);
  addr("gnb_n3_address", core.gnb_n3_address);
  if (n["prior_sessions"]) {
    mark("core.prior_sessions", n["prior_sessions"]);
    core.prior_sessions = get<int>(n, "prior_sessions", p);
  }
  if (const auto subs = n["subscribers"]) {
    if (!subs.IsSequence()) throw ValidationError("core.subscribers", line_of(subs), "expected a list");
    for (std::size_t i = 0; i < subs.size(); ++i) {
      const std::string sp = "core.subscribers[" + std::to_string(i) + "]";
      mark(sp, subs[i]);
      corenet::SubscriberRecord r;
      r.imsi = get<std::string>(subs[i], "imsi", sp);
      r.enabled = get_opt<bool>(subs[i], "enabled", sp).value_or(true);
      core.subscribers.push_back(r);
    }
  }
}

rflink::LinkMedium Parser::parse_medium(const YAML::Node& n, const std::string& path) {
  const auto type = get<std::string>(n, "type", path);
  rflink::LinkMedium m;
  if (type == "over-air") {
    m.kind = rflink::OverAir{get<double>(n, "distance_m", path)};
  } else if (type == "cable") {
    m.kind = rflink::Cable{get<double>(n, "length_cm", path), get_opt<double>(n, "attenuator_db", path).value_or(0.0)};
  } else {
    throw ValidationError(path + ".type", line_of(n["type"]), "expected over-air or cable, got '" + type + "'");
  }
  converted(path, n, [&] {
    m.validate();
    return 0;
  });
  return m;
}

void Parser::parse_nodes(const YAML::Node& n) {
  if (!n.IsSequence()) throw ValidationError("nodes", line_of(n), "expected a list");
  for (std::size_t i = 0; i < n.size(); ++i) {
    const auto& e = n[i];
    const std::string p = "nodes[" + std::to_string(i) + "]";
    NodeSpec node;
    node.line = line_of(e);
    node.name = get<std::string>(e, "name", p);
    const auto role = get<std::string>(e, "role", p);
    if (role == "gnb") {
      node.role = NodeRole::Gnb;
    } else if (role == "ue") {
      node.role = NodeRole::Ue;
    } else if (role == "core") {
      node.role = NodeRole::Core;
    } else if (role == "external") {
      node.role = NodeRole::External;
    } else {
      throw ValidationError(p + ".role", line_of(e["role"]), "unknown role '" + role + "'");
    }
    node.host = get_opt<std::string>(e, "host", p).value_or("");
    node.sdr = get_opt<std::string>(e, "sdr", p).value_or("");
    node.imsi = get_opt<std::string>(e, "imsi", p).value_or("");
    node.provisioned = get_opt<bool>(e, "provisioned", p).value_or(true);
    node.colocated_with = get_opt<std::string>(e, "colocated_with", p).value_or("");
    if (e["medium"]) node.medium = parse_medium(e["medium"], p + ".medium");
    if (e["address"]) {
      node.address = converted(p + ".address", e["address"],
                               [&] { return Ipv4Address::parse(as<std::string>(e["address"], p + ".address")); });
    }
    if (e["one_way_delay_us"]) node.one_way_delay = micros(e["one_way_delay_us"], p + ".one_way_delay_us");
    s_.nodes.push_back(std::move(node));
  }
}

void Parser::parse_traffic(const YAML::Node& n) {
  if (!n.IsSequence()) throw ValidationError("traffic", line_of(n), "expected a list");
  for (std::size_t i = 0; i < n.size(); ++i) {
    const auto& e = n[i];
    const std::string p = "traffic[" + std::to_string(i) + "]";
    ProbeSpec probe;
    probe.line = line_of(e);
    if (e["ping"]) {
      const auto& b = e["ping"];
      const std::string bp = p + ".ping";
      probe.kind = ProbeKind::Ping;
      probe.from = get<std::string>(b, "from", bp);
      probe.to = get_opt<std::string>(b, "to", bp).value_or("gateway");
      probe.count = get_opt<std::uint32_t>(b, "count", bp).value_or(100);
      if (b["interval_ms"]) {
        probe.interval = Micros{static_cast<std::int64_t>(std::llround(get<double>(b, "interval_ms", bp) * 1000))};
      }
      probe.data_size = get_opt<std::size_t>(b, "size", bp).value_or(56);
    } else if (e["iperf"]) {
      const auto& b = e["iperf"];
      const std::string bp = p + ".iperf";
      probe.kind = ProbeKind::Throughput;
      probe.from = get<std::string>(b, "from", bp);
      probe.to = "gateway";
      probe.direction = converted(bp + ".direction", b, [&] {
        return spectrum::parse_link(get<std::string>(b, "direction", bp));
      });
      if (b["duration_s"]) {
        probe.duration = Micros{static_cast<std::int64_t>(std::llround(get<double>(b, "duration_s", bp) * 1e6))};
      }
    } else {
      throw ValidationError(p, probe.line, "expected a ping or iperf entry");
    }
    s_.traffic.push_back(std::move(probe));
  }
}

void Parser::parse_occupancy(const YAML::Node& n) {
  mark("occupancy", n);
  if (const auto bursts = n["bursts"]) {
    if (!bursts.IsSequence()) throw ValidationError("occupancy.bursts", line_of(bursts), "expected a list");
    for (std::size_t i = 0; i < bursts.size(); ++i) {
      const std::string p = "occupancy.bursts[" + std::to_string(i) + "]";
      access::Burst b;
      b.start = micros(detail::require(bursts[i], "start_us", p), p + ".start_us");
      b.end = micros(detail::require(bursts[i], "end_us", p), p + ".end_us");
      b.power_dbm = get<double>(bursts[i], "power_dbm", p);
      if (!(b.start < b.end)) throw ValidationError(p, line_of(bursts[i]), "start_us must precede end_us");
      s_.occupancy.bursts.push_back(b);
    }
  }
  if (const auto w = n["wifi"]) {
    const std::string p = "occupancy.wifi";
    WifiTraffic t;
    t.mean_gap = micros(detail::require(w, "mean_gap_us", p), p + ".mean_gap_us");
    t.mean_duration = micros(detail::require(w, "mean_duration_us", p), p + ".mean_duration_us");
    t.power_dbm = get<double>(w, "power_dbm", p);
    if (t.mean_gap.count() <= 0 || t.mean_duration.count() <= 0) {
      throw ValidationError(p, line_of(w), "mean gap and duration must be positive");
    }
    s_.occupancy.wifi = t;
  }
}

void Parser::parse_faults(const YAML::Node& n) {
  if (!n.IsSequence()) throw ValidationError("faults", line_of(n), "expected a list");
  for (std::size_t i = 0; i < n.size(); ++i) {
    const std::string p = "faults[" + std::to_string(i) + "]";
    FaultSpec f;
    const auto kind = get<std::string>(n[i], "kind", p);
    if (kind != "stale-event") throw ValidationError(p + ".kind", line_of(n[i]), "unknown fault '" + kind + "'");
    f.kind = FaultKind::StaleEvent;
    f.at = Micros{static_cast<std::int64_t>(std::llround(get<double>(n[i], "at_ms", p) * 1000))};
    s_.faults.push_back(f);
  }
}

[[noreturn]] void fail(const Scenario& s, const std::string& field, const std::string& what, int line = -1) {
  throw ValidationError(field, line >= 0 ? line : s.line_of(field), what);
}

template <typename F>
void relined(const Scenario& s, const std::string& field, int line, F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    if (e.line() > 0) throw;
    throw ValidationError(e.field().empty() ? field : e.field(), line, e.what());
  } catch (const Error& e) {
    fail(s, field, e.what(), line);
  }
}

void validate_cell(const Scenario& s, const Environment& env) {
  const auto& c = s.cell;
  const auto* band = env.bands.try_find(c.band_id);
  if (band == nullptr) fail(s, "cell.band", "unknown band '" + c.band_id + "'");
  const auto raster = band->raster(spectrum::Link::DL);
  if (!raster) fail(s, "cell.band", "band " + c.band_id + " has no downlink raster");
  if (!spectrum::validate_channel(*band, c.arfcn, spectrum::Link::DL)) {
    fail(s, "cell.arfcn",
         "ARFCN " + std::to_string(c.arfcn.value) + " is not on the " + c.band_id + " channel raster " +
             std::to_string(raster->first) + ".." + std::to_string(raster->last) + " step " +
             std::to_string(raster->step));
  }
  bool scs_ok = false;
  for (const auto& e : band->sync_entries) scs_ok = scs_ok || e.scs_khz == c.scs_khz;
  if (!scs_ok) fail(s, "cell.scs_khz", "band " + c.band_id + " has no SS block at " + std::to_string(c.scs_khz) + " kHz");
  if (!rflink::resource_blocks(c.bandwidth, c.scs_khz)) {
    fail(s, "cell.bandwidth_mhz",
         c.bandwidth.to_mhz_string() + " MHz is not a carrier bandwidth at " + std::to_string(c.scs_khz) + " kHz SCS");
  }
  const auto centre = spectrum::arfcn_to_frequency(c.arfcn);
  const auto span = spectrum::raster_span(*band, spectrum::Link::DL);
  const auto half = Frequency::from_khz(c.bandwidth.khz() / 2);
  if (centre - half < span.low || centre + half > span.high) {
    fail(s, "cell.bandwidth_mhz",
         "carrier " + (centre - half).to_mhz_string() + ".." + (centre + half).to_mhz_string() +
             " MHz leaves band " + c.band_id);
  }
  if (c.gscn) {
    bool found = false;
    for (const auto& cand : spectrum::ss_scan_candidates(*band)) found = found || cand.gscn == *c.gscn;
    if (!found) fail(s, "cell.gscn", "GSCN " + std::to_string(c.gscn->value) + " is not on the " + c.band_id + " sync raster");
  } else if (!spectrum::nearest_gscn_at_or_below(*band, centre)) {
    fail(s, "cell.arfcn", "no sync raster point at or below the carrier");
  }
  relined(s, "cell.tdd", s.line_of("cell.tdd"), [&] { c.tdd.validate(); });
  relined(s, "cell.lbt", s.line_of("cell.lbt"), [&] { c.lbt.validate(); });
  if (c.attenuation_factor < 0) fail(s, "cell.attenuation_factor", "must be non-negative");
  if (c.eirp_mw && !(*c.eirp_mw >= 0)) fail(s, "cell.eirp_mw", "must be non-negative");
  if (!c.regulatory_override) {
    std::vector<spectrum::Violation> v;
    relined(s, "cell.jurisdiction", s.line_of("cell"),
            [&] { v = spectrum::check_regulatory(channel_assignment(c), env.rules, c.jurisdiction); });
    if (!v.empty()) {
      fail(s, "cell", "regulatory check failed (" + std::string(spectrum::to_string(v.front().kind)) + "): " +
                          v.front().message + "; set regulatory_override to run anyway");
    }
  }
}

void validate_nodes(const Scenario& s, const Environment& env) {
  std::set<std::string> names;
  for (const auto& n : s.nodes) {
    if (n.name.empty()) fail(s, "nodes", "node name must not be empty", n.line);
    if (n.name == "gateway" || n.name == "n3" || n.name == "n6") {
      fail(s, "nodes." + n.name, "name is reserved", n.line);
    }
    if (!names.insert(n.name).second) fail(s, "nodes." + n.name, "duplicate node name", n.line);
  }
  if (s.nodes_with(NodeRole::Core).size() != 1) {
    fail(s, "nodes", "exactly one core node is required, found " + std::to_string(s.nodes_with(NodeRole::Core).size()));
  }
  if (s.nodes_with(NodeRole::Gnb).size() != 1) {
    fail(s, "nodes", "exactly one gnb node is required, found " + std::to_string(s.nodes_with(NodeRole::Gnb).size()));
  }
  if (s.nodes_with(NodeRole::Ue).empty()) fail(s, "nodes", "at least one ue node is required");

  std::set<std::string> imsis;
  for (const auto& sub : s.core.subscribers) imsis.insert(sub.imsi);
  const auto& cell = s.cell;
  for (const auto& n : s.nodes) {
    const std::string f = "nodes." + n.name;
    const auto need_host = [&] {
      if (n.host.empty()) fail(s, f + ".host", "missing host profile", n.line);
      relined(s, f + ".host", n.line, [&] { (void)env.hardware.host(n.host); });
    };
    const auto need_sdr = [&] {
      if (n.sdr.empty()) fail(s, f + ".sdr", "missing SDR model", n.line);
      relined(s, f + ".sdr", n.line, [&] {
        const auto& sdr = env.hardware.sdr(n.sdr);
        if (cell.bandwidth > sdr.max_bandwidth) {
          throw DomainError(sdr.name + " tops out at " + sdr.max_bandwidth.to_mhz_string() + " MHz, below the " +
                            cell.bandwidth.to_mhz_string() + " MHz carrier");
        }
      });
    };
    switch (n.role) {
      case NodeRole::Gnb:
        need_host();
        need_sdr();
        break;
      case NodeRole::Ue:
        need_host();
        need_sdr();
        if (!corenet::SubscriberStore::well_formed(n.imsi)) fail(s, f + ".imsi", "IMSI must be 15 digits", n.line);
        if (n.provisioned && imsis.count(n.imsi) == 0) {
          fail(s, f + ".imsi",
               "IMSI " + n.imsi + " is not provisioned; add it to core.subscribers or mark the UE provisioned: false",
               n.line);
        }
        if (!n.provisioned && imsis.count(n.imsi) != 0) {
          fail(s, f + ".provisioned", "UE marked unprovisioned but its IMSI is provisioned", n.line);
        }
        if (!n.medium) fail(s, f + ".medium", "missing radio link medium", n.line);
        break;
      case NodeRole::Core:
        if (!n.colocated_with.empty()) {
          const auto* g = s.find_node(n.colocated_with);
          if (g == nullptr || g->role != NodeRole::Gnb) {
            fail(s, f + ".colocated_with", "'" + n.colocated_with + "' is not a gnb node", n.line);
          }
        } else {
          need_host();
        }
        break;
      case NodeRole::External:
        if (!n.address) fail(s, f + ".address", "external host needs an address", n.line);
        if (s.core.config.ue_pool.contains(*n.address) || s.core.config.core_subnet.contains(*n.address)) {
          fail(s, f + ".address", "external address must lie outside the UE pool and core subnet", n.line);
        }
        break;
    }
  }
}

void validate_core(const Scenario& s) {
  relined(s, "core", s.line_of("core"), [&] { s.core.config.validate(); });
  const auto hosts = s.core.config.ue_pool.host_count();
  if (s.core.prior_sessions < 0) fail(s, "core.prior_sessions", "must be non-negative");
  const auto ues = s.nodes_with(NodeRole::Ue).size();
  if (hosts < 2 || static_cast<std::uint64_t>(s.core.prior_sessions) + ues > hosts - 1) {
    fail(s, "core.prior_sessions", "pool " + s.core.config.ue_pool.to_string() + " cannot hold " +
                                       std::to_string(s.core.prior_sessions) + " prior sessions plus " +
                                       std::to_string(ues) + " UEs");
  }
  if (!s.core.config.core_subnet.contains(s.core.gnb_n3_address)) {
    fail(s, "core.gnb_n3_address", "must lie inside the core subnet");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < s.core.subscribers.size(); ++i) {
    const auto& sub = s.core.subscribers[i];
    const std::string f = "core.subscribers[" + std::to_string(i) + "]";
    if (!corenet::SubscriberStore::well_formed(sub.imsi)) fail(s, f, "IMSI must be 15 digits");
    if (!seen.insert(sub.imsi).second) fail(s, f, "duplicate IMSI " + sub.imsi);
  }
}

void validate_traffic(const Scenario& s) {
  for (std::size_t i = 0; i < s.traffic.size(); ++i) {
    const auto& p = s.traffic[i];
    const std::string f = "traffic[" + std::to_string(i) + "]";
    const auto* from = s.find_node(p.from);
    if (from == nullptr || from->role != NodeRole::Ue) fail(s, f + ".from", "'" + p.from + "' is not a ue node", p.line);
    if (p.kind == ProbeKind::Ping) {
      if (p.count == 0) fail(s, f + ".count", "must be positive", p.line);
      if (p.interval.count() <= 0) fail(s, f + ".interval_ms", "must be positive", p.line);
      if (p.data_size < 8 || p.data_size > 1400) fail(s, f + ".size", "must lie in 8..1400 bytes", p.line);
      if (p.to != "gateway" && s.find_node(p.to) == nullptr) {
        try {
          (void)Ipv4Address::parse(p.to);
        } catch (const Error&) {
          fail(s, f + ".to", "'" + p.to + "' is neither gateway, a node name nor an address", p.line);
        }
      }
      if (const auto* to = s.find_node(p.to); to != nullptr && to->role != NodeRole::Ue && to->role != NodeRole::External) {
        fail(s, f + ".to", "ping target must be gateway, a ue or an external host", p.line);
      }
      if (p.to == p.from) fail(s, f + ".to", "a UE cannot ping itself", p.line);
    } else {
      if (p.duration.count() <= 0) fail(s, f + ".duration_s", "must be positive", p.line);
    }
  }
  if (s.planned_traffic_time() > s.duration) {
    fail(s, "duration_s",
         "traffic plan needs " + std::to_string(s.planned_traffic_time().count() / 1000) + " ms but duration is " +
             std::to_string(s.duration.count() / 1000) + " ms");
  }
  for (const auto& t : s.taps) {
    if (t == "n3" || t == "n6") continue;
    const auto* n = s.find_node(t);
    if (n == nullptr || n->role != NodeRole::Ue) fail(s, "taps", "tap '" + t + "' is not n3, n6 or a ue node");
  }
}

}  // namespace

std::string Environment::default_data_dir() {
  if (const char* env = std::getenv("NRUSIM_DATA_DIR"); env != nullptr && *env != '\0') return env;
  if (fs::exists(fs::path(NRUSIM_INSTALLED_DATA_DIR) / "bands.yaml")) return NRUSIM_INSTALLED_DATA_DIR;
  return NRUSIM_BUILD_DATA_DIR;
}

Environment Environment::load(const std::string& data_dir) {
  Environment e;
  e.data_dir = data_dir;
  e.bands = spectrum::BandTable::load(data_dir + "/bands.yaml");
  e.hardware = rflink::HardwareCatalog::load(data_dir + "/hardware.yaml");
  e.rules = spectrum::load_regulatory_rules(data_dir + "/regulatory.yaml");
  return e;
}

int Scenario::line_of(const std::string& field) const {
  const auto it = field_lines.find(field);
  return it == field_lines.end() ? 0 : it->second;
}

const NodeSpec* Scenario::find_node(std::string_view n) const {
  for (const auto& node : nodes) {
    if (node.name == n) return &node;
  }
  return nullptr;
}

const NodeSpec& Scenario::node(std::string_view n) const {
  if (const auto* p = find_node(n)) return *p;
  throw ConfigError("no node named '" + std::string(n) + "'");
}

std::vector<const NodeSpec*> Scenario::nodes_with(NodeRole role) const {
  std::vector<const NodeSpec*> out;
  for (const auto& n : nodes) {
    if (n.role == role) out.push_back(&n);
  }
  return out;
}

const NodeSpec& Scenario::gnb() const {
  const auto v = nodes_with(NodeRole::Gnb);
  if (v.size() != 1) throw ConfigError("scenario needs exactly one gnb");
  return *v.front();
}

const NodeSpec& Scenario::core_node() const {
  const auto v = nodes_with(NodeRole::Core);
  if (v.size() != 1) throw ConfigError("scenario needs exactly one core");
  return *v.front();
}

Micros Scenario::planned_traffic_time() const {
  Micros total{0};
  for (const auto& p : traffic) {
    total += p.kind == ProbeKind::Ping ? p.interval * static_cast<std::int64_t>(p.count) : p.duration;
  }
  return total;
}

double derived_eirp_mw(const CellConfig& cell) {
  const auto rbs = rflink::resource_blocks(cell.bandwidth, cell.scs_khz).value_or(0);
  const double dbm = cell.tx_power_dbm + 10.0 * std::log10(std::max(1, rbs * 12));
  return std::pow(10.0, dbm / 10.0);
}

spectrum::ChannelAssignment channel_assignment(const CellConfig& cell) {
  spectrum::ChannelAssignment a;
  a.band_id = cell.band_id;
  a.arfcn = cell.arfcn;
  a.bandwidth = cell.bandwidth;
  a.eirp_mw = cell.eirp_mw.value_or(derived_eirp_mw(cell));
  a.indoor = cell.indoor;
  return a;
}

void validate_scenario(const Scenario& s, const Environment& env) {
  if (s.name.empty()) fail(s, "name", "must not be empty");
  validate_cell(s, env);
  validate_core(s);
  validate_nodes(s, env);
  validate_traffic(s);
  for (const auto& f : s.faults) {
    if (f.at.count() < 0) fail(s, "faults", "fault time must be non-negative");
  }
}

Scenario parse_scenario(const std::string& yaml_text, const std::string& source, const Environment& env) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    throw ValidationError(source, e.mark.line + 1, e.msg);
  }
  Scenario s;
  s.source = source;
  const auto dir = fs::path(source).parent_path().string();
  Parser(s, dir.empty() ? "." : dir, env).parse(root);
  validate_scenario(s, env);
  return s;
}

Scenario load_scenario(const std::string& path, const Environment& env) {
  const YAML::Node root = detail::load_yaml_file(path);
  Scenario s;
  s.source = path;
  const auto dir = fs::path(path).parent_path().string();
  Parser(s, dir.empty() ? "." : dir, env).parse(root);
  validate_scenario(s, env);
  return s;
}

std::string_view to_string(NodeRole r) {
  switch (r) {
    case NodeRole::Gnb: return "gnb";
    case NodeRole::Ue: return "ue";
    case NodeRole::Core: return "core";
    case NodeRole::External: return "external";
  }
  return "?";
}

}  // namespace nrusim::sim
