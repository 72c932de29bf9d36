/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/metrics/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "nrusim/common/error.hpp"

namespace nrusim::metrics {
namespace {

using nlohmann::json;

json ping_json(const PingStats& s) {
  return json{{"min_ms", s.min}, {"max_ms", s.max}, {"avg_ms", s.avg}, {"mdev_ms", s.mdev},
              {"sent", s.sent},  {"received", s.received}};
}

PingStats ping_from(const json& j) {
  PingStats s;
  s.min = j.at("min_ms").get<double>();
  s.max = j.at("max_ms").get<double>();
  s.avg = j.at("avg_ms").get<double>();
  s.mdev = j.at("mdev_ms").get<double>();
  s.sent = j.at("sent").get<std::uint32_t>();
  s.received = j.at("received").get<std::uint32_t>();
  return s;
}

json tput_json(const ThroughputStats& s) {
  return json{{"direction", spectrum::to_string(s.direction)},
              {"peak_mbps", s.peak},
              {"avg_low_mbps", s.avg_low},
              {"avg_high_mbps", s.avg_high}};
}

ThroughputStats tput_from(const json& j) {
  ThroughputStats s;
  s.direction = spectrum::parse_link(j.at("direction").get<std::string>());
  s.peak = j.at("peak_mbps").get<double>();
  s.avg_low = j.at("avg_low_mbps").get<double>();
  s.avg_high = j.at("avg_high_mbps").get<double>();
  return s;
}

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> opt_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

std::string tput_cell(const ThroughputResult* t) {
  if (t == nullptr) return "-";
  return "Peak " + fmt2(t->stats.peak) + " Avg " + fmt2(t->stats.avg_low) + "~" + fmt2(t->stats.avg_high);
}

}  // namespace

const PingResult* ScenarioReport::first_ping() const { return pings.empty() ? nullptr : &pings.front(); }

const ThroughputResult* ScenarioReport::first_throughput(spectrum::Link dir) const {
  for (const auto& t : throughput) {
    if (t.stats.direction == dir) return &t;
  }
  return nullptr;
}

double report_round(double v) {
  const double r = std::round(v * 100.0) / 100.0;
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

json to_json(const ScenarioReport& r) {
  json j;
  j["schema_version"] = ScenarioReport::kSchemaVersion;
  j["name"] = r.name;
  j["seed"] = r.seed;
  j["seed_defaulted"] = r.seed_defaulted;
  j["gnb_drop_fraction"] = r.gnb_drop_fraction;
  j["link_viable"] = r.link_viable;
  j["links"] = json::array();
  for (const auto& l : r.links) {
    j["links"].push_back(json{{"ue", l.ue},
                              {"medium", l.medium},
                              {"rsrp_dbm", l.rsrp_dbm},
                              {"ue_drop_fraction", l.ue_drop_fraction},
                              {"viable", l.viable}});
  }
  j["attach"] = json::array();
  for (const auto& a : r.attach) {
    j["attach"].push_back(json{{"ue", a.ue},
                               {"phase", a.phase},
                               {"ip", opt(a.ip)},
                               {"failure", opt(a.failure)},
                               {"gscn", opt(a.gscn)},
                               {"scan_steps", a.scan_steps}});
  }
  j["pings"] = json::array();
  for (const auto& p : r.pings) j["pings"].push_back(json{{"from", p.from}, {"to", p.to}, {"stats", ping_json(p.stats)}});
  j["throughput"] = json::array();
  for (const auto& t : r.throughput) {
    j["throughput"].push_back(json{{"ue", t.ue},
                                   {"stats", tput_json(t.stats)},
                                   {"slots_granted", t.slots_granted},
                                   {"slots_lost_to_lbt", t.slots_lost_to_lbt}});
  }
  j["taps"] = json::array();
  for (const auto& t : r.taps) {
    json sessions = json::array();
    for (const auto& s : t.sessions) {
      sessions.push_back(json{{"session_id", s.session_id},
                              {"left", s.left.to_string()},
                              {"right", s.right.to_string()},
                              {"packets", s.packet_count},
                              {"bytes", s.byte_count},
                              {"rtt_latest_ms", opt(s.rtt_latest_ms)}});
    }
    j["taps"].push_back(
        json{{"tap", t.tap}, {"frames", t.frames}, {"unparseable", t.unparseable}, {"sessions", sessions}});
  }
  j["notes"] = r.notes;
  j["event_count"] = r.event_count;
  j["event_log_digest"] = r.event_log_digest;
  return j;
}

ScenarioReport report_from_json(const json& j) {
  if (!j.is_object() || !j.contains("schema_version")) throw ConfigError("not a scenario report record");
  const int v = j.at("schema_version").get<int>();
  if (v != ScenarioReport::kSchemaVersion) {
    throw ConfigError("report schema " + std::to_string(v) + " is not compatible with schema " +
                      std::to_string(ScenarioReport::kSchemaVersion));
  }
  try {
    ScenarioReport r;
    r.name = j.at("name").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.seed_defaulted = j.at("seed_defaulted").get<bool>();
    r.gnb_drop_fraction = j.at("gnb_drop_fraction").get<double>();
    r.link_viable = j.at("link_viable").get<bool>();
    for (const auto& l : j.at("links")) {
      r.links.push_back(LinkSummary{l.at("ue").get<std::string>(), l.at("medium").get<std::string>(),
                                    l.at("rsrp_dbm").get<double>(), l.at("ue_drop_fraction").get<double>(),
                                    l.at("viable").get<bool>()});
    }
    for (const auto& a : j.at("attach")) {
      r.attach.push_back(AttachSummary{a.at("ue").get<std::string>(), a.at("phase").get<std::string>(),
                                       opt_from<std::string>(a, "ip"), opt_from<std::string>(a, "failure"),
                                       opt_from<std::uint32_t>(a, "gscn"), a.at("scan_steps").get<std::size_t>()});
    }
    for (const auto& p : j.at("pings")) {
      r.pings.push_back(
          PingResult{p.at("from").get<std::string>(), p.at("to").get<std::string>(), ping_from(p.at("stats"))});
    }
    for (const auto& t : j.at("throughput")) {
      r.throughput.push_back(ThroughputResult{t.at("ue").get<std::string>(), tput_from(t.at("stats")),
                                              t.at("slots_granted").get<std::uint64_t>(),
                                              t.at("slots_lost_to_lbt").get<std::uint64_t>()});
    }
    for (const auto& t : j.at("taps")) {
      TapSummary ts;
      ts.tap = t.at("tap").get<std::string>();
      ts.frames = t.at("frames").get<std::uint64_t>();
      ts.unparseable = t.at("unparseable").get<std::uint64_t>();
      for (const auto& s : t.at("sessions")) {
        PassiveSession ps;
        ps.session_id = s.at("session_id").get<std::uint32_t>();
        ps.left = Ipv4Address::parse(s.at("left").get<std::string>());
        ps.right = Ipv4Address::parse(s.at("right").get<std::string>());
        ps.packet_count = s.at("packets").get<std::uint64_t>();
        ps.byte_count = s.at("bytes").get<std::uint64_t>();
        ps.rtt_latest_ms = opt_from<double>(s, "rtt_latest_ms");
        ts.sessions.push_back(ps);
      }
      r.taps.push_back(std::move(ts));
    }
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.event_count = j.at("event_count").get<std::uint64_t>();
    r.event_log_digest = j.at("event_log_digest").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report record: ") + e.what());
  }
}

std::string render_jsonl(const std::vector<ScenarioReport>& reports) {
  std::string out;
  for (const auto& r : reports) out += to_json(r).dump() + "\n";
  return out;
}

std::vector<ScenarioReport> parse_jsonl(const std::string& text) {
  std::vector<ScenarioReport> out;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ConfigError("report line " + std::to_string(n) + ": " + e.what());
    }
    out.push_back(report_from_json(j));
  }
  return out;
}

std::string render_table(const std::vector<ScenarioReport>& reports) {
  constexpr std::size_t kName = 14, kRtt = 44, kTput = 30;
  std::string out = pad("Test", kName) + pad("RTT ping UE to core (ms)", kRtt) + pad("Uplink (Mbps)", kTput) +
                    "Downlink (Mbps)\n";
  for (const auto& r : reports) {
    std::string rtt = "-";
    if (const auto* p = r.first_ping()) {
      const auto& s = p->stats;
      rtt = s.empty() ? "no replies (" + std::to_string(s.sent) + " sent)"
                      : "Min " + fmt2(s.min) + " Max " + fmt2(s.max) + " Avg " + fmt2(s.avg) + " Mdev " + fmt2(s.mdev);
    }
    out += pad(r.name, kName) + pad(rtt, kRtt) + pad(tput_cell(r.first_throughput(spectrum::Link::UL)), kTput) +
           tput_cell(r.first_throughput(spectrum::Link::DL)) + "\n";
  }
  return out;
}

}  // namespace nrusim::metrics
