/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nrusim/access/lbt.hpp"
#include "nrusim/common/error.hpp"
#include "nrusim/common/rng.hpp"
#include "nrusim/corenet/core_network.hpp"
#include "nrusim/metrics/passive_monitor.hpp"
#include "nrusim/sim/compare.hpp"
#include "nrusim/sim/scenario.hpp"
#include "nrusim/sim/testbed.hpp"
#include "nrusim/spectrum/band_plan.hpp"
#include "nrusim/spectrum/raster.hpp"
#include "nrusim/spectrum/regulatory.hpp"
#include "nrusim/userplane/gtpu.hpp"
#include "nrusim/userplane/packet.hpp"

using namespace nrusim;
using Clock = std::chrono::steady_clock;

namespace {

struct Failure {
  std::string why;
};

void require(bool cond, const std::string& why) {
  if (!cond) throw Failure{why};
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const sim::Environment& env() {
  static const sim::Environment e = sim::Environment::load(NRUSIM_TEST_DATA_DIR);
  return e;
}

std::string scenario_path(const std::string& name) { return std::string(NRUSIM_TEST_SCENARIO_DIR) + "/" + name + ".yaml"; }

sim::RunArtifacts run(const std::string& name) {
  return sim::run_scenario(sim::load_scenario(scenario_path(name), env()), env());
}

std::vector<std::uint8_t> unhex(const std::string& s) {
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i + 1 < s.size(); i += 2) out.push_back(static_cast<std::uint8_t>(std::stoul(s.substr(i, 2), nullptr, 16)));
  return out;
}

const metrics::TapSummary& tap(const metrics::ScenarioReport& r, const std::string& name) {
  for (const auto& t : r.taps) {
    if (t.tap == name) return t;
  }
  throw Failure{"no tap " + name};
}

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol * target; }

std::string fmt(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

// ---------------------------------------------------------------------------

void raster_exactness() {
  const auto t0 = Clock::now();
  const auto& n46 = env().bands.find("n46");
  require(spectrum::arfcn_to_frequency(spectrum::Arfcn{600000}).khz() == 3000000, "ARFCN 600000");
  require(spectrum::arfcn_to_frequency(spectrum::Arfcn{750000}).khz() == 5250000, "ARFCN 750000");
  require(spectrum::gscn_to_ss_frequency(spectrum::Gscn{8993}).khz() == 5151360, "GSCN 8993");
  require(spectrum::gscn_to_ss_frequency(spectrum::Gscn{9530}).khz() == 5924640, "GSCN 9530");
  const auto r = *n46.raster(spectrum::Link::DL);
  for (std::uint32_t a = r.first; a <= r.last; a += r.step) {
    const auto f = spectrum::arfcn_to_frequency(spectrum::Arfcn{a});
    require(spectrum::frequency_to_arfcn(f).value == a, "round trip at " + std::to_string(a));
  }
  require(spectrum::ss_scan_candidates(n46).size() == 538, "538 SS candidates");
  const auto dt = seconds_since(t0);
  require(dt < 1.0, "took " + fmt(dt) + " s");
}

void frequency_edges() {
  const auto& n46 = env().bands.find("n46");
  using spectrum::Arfcn;
  require(spectrum::validate_channel(n46, Arfcn{743333}, spectrum::Link::DL), "743333 accepted");
  require(spectrum::validate_channel(n46, Arfcn{795000}, spectrum::Link::DL), "795000 accepted");
  require(!spectrum::validate_channel(n46, Arfcn{743332}, spectrum::Link::DL), "743332 rejected");
  require(!spectrum::validate_channel(n46, Arfcn{795001}, spectrum::Link::DL), "795001 rejected");
  try {
    spectrum::frequency_to_arfcn(Frequency::from_khz(5250007));
    throw Failure{"off-grid frequency accepted"};
  } catch (const spectrum::RasterError& e) {
    require(e.below().value == 750000 && e.above().value == 750001, "neighbours");
  }
}

void regulatory_boundaries() {
  const auto& rules = env().rules;
  auto em = [](double c, double bw, double eirp, bool indoor) {
    return spectrum::Emission{Frequency::from_mhz(c), Frequency::from_mhz(bw), eirp, indoor};
  };
  const auto v1 = spectrum::check_regulatory(em(5800, 20, 30, true), rules);
  require(v1.size() == 1 && v1[0].kind == spectrum::ViolationKind::EirpExceeded, "5800 MHz 30 mW indoor");
  const auto v2 = spectrum::check_regulatory(em(5200, 20, 20, false), rules);
  require(v2.size() == 1 && v2[0].kind == spectrum::ViolationKind::IndoorOnly, "5200 MHz outdoor");
  require(spectrum::check_regulatory(em(5200, 20, 20, true), rules).empty(), "5200 MHz indoor ok");
  require(spectrum::check_regulatory(em(5800, 20, 25.0, true), rules).empty(), "25.0 mW ok");
  require(!spectrum::check_regulatory(em(5800, 20, 25.1, true), rules).empty(), "25.1 mW rejected");
}

void gtpu_codec() {
  const auto t0 = Clock::now();
  const auto inner = unhex(
      "45000054000100004001197e0c010102acd9a74e0800eeb712340001000102030405060708090a0b0c0d0e0f101112131415161718191a1b"
      "1c1d1e1f202122232425262728292a2b2c2d2e2f3031323334353637");
  const auto v1 = userplane::encode_gtpu(1, inner);
  require(std::vector<std::uint8_t>(v1.begin(), v1.begin() + 8) ==
              std::vector<std::uint8_t>{0x30, 0xFF, 0x00, 0x54, 0x00, 0x00, 0x00, 0x01},
          "84-byte vector");
  require(userplane::encode_gtpu(0, {}) == std::vector<std::uint8_t>{0x30, 0xFF, 0, 0, 0, 0, 0, 0}, "empty vector");
  const std::uint8_t one[] = {0x45};
  const auto v3 = userplane::encode_gtpu(0xDEADBEEF, one);
  require(v3.size() == 9 && v3[4] == 0xDE && v3[7] == 0xEF && v3[3] == 0x01, "1-byte vector");
  Rng rng(2024);
  for (int i = 0; i < 10000; ++i) {
    const auto teid = static_cast<std::uint32_t>(rng.next());
    std::vector<std::uint8_t> p(rng.uniform_int(0, 1500));
    for (auto& b : p) b = static_cast<std::uint8_t>(rng.next());
    const auto enc = userplane::encode_gtpu(teid, p);
    const auto dec = userplane::decode_gtpu(enc);
    require(dec.header.teid == teid && std::equal(dec.payload.begin(), dec.payload.end(), p.begin(), p.end()),
            "round trip " + std::to_string(i));
  }
  const auto dt = seconds_since(t0);
  require(dt < 5.0, "took " + fmt(dt) + " s");
}

void functional_replication() {
  const auto ns = run("north_south");
  require(ns.report.attach.at(0).ip == "10.1.1.5", "north-south UE address");
  const auto* p = ns.report.first_ping();
  require(p && p->stats.received == p->stats.sent && p->stats.sent > 0, "north-south pings answered");
  std::set<std::uint32_t> ids;
  for (const auto* name : {"ue1", "n3", "n6"}) {
    const auto& t = tap(ns.report, name);
    require(t.sessions.size() == 1, std::string("one session at ") + name);
    ids.insert(t.sessions[0].session_id);
  }
  require(ids.size() == 1, "session id differs between taps");
  const auto& ue = tap(ns.report, "ue1").sessions[0];
  const auto& n6 = tap(ns.report, "n6").sessions[0];
  require(ue.left.to_string() == "10.1.1.5" && ue.right.to_string() == "142.250.204.4", "UE-side endpoints");
  require(n6.left.to_string() == "192.168.70.134" && n6.right.to_string() == "142.250.204.4", "N6 endpoints");

  const auto ew = run("east_west");
  const auto* q = ew.report.first_ping();
  require(q && q->stats.received == q->stats.sent && q->stats.sent > 0, "east-west pings answered");
  require(ew.captures.at("ue1").front().bytes == ew.captures.at("ue2").front().bytes, "inner packet unchanged");
}

void ip_allocation() {
  corenet::SubscriberStore s;
  s.add({"208950000000031", true});
  s.add({"208950000000032", true});
  corenet::CoreNetwork core(corenet::CoreConfig{}, s, 1);
  require(core.register_ue("208950000000031").accepted && core.register_ue("208950000000032").accepted, "registration");
  const auto id1 = core.establish_pdu_session("208950000000031").id;
  const auto id2 = core.establish_pdu_session("208950000000032").id;
  require(core.session(id1)->ip.to_string() == "12.1.1.2", "first UE .2");
  require(core.session(id2)->ip.to_string() == "12.1.1.3", "second UE .3");
  core.release_session(id1);
  core.release_session(id2);
  core.reconfigure_pool(Cidr::parse("10.1.1.0/24"));
  require(core.establish_pdu_session("208950000000031").ip.to_string() == "10.1.1.2", "reconfigured pool");
  core.check_invariants();
}

void test_d_reproduction() {
  const auto a = run("test_d");
  const auto b = run("test_d");
  require(a.report.gnb_drop_fraction == 0.015, "drop " + fmt(a.report.gnb_drop_fraction));
  require(!a.report.link_viable, "link marked viable");
  const auto* dl = a.report.first_throughput(spectrum::Link::DL);
  const auto* ul = a.report.first_throughput(spectrum::Link::UL);
  require(dl && ul && dl->stats.peak == 0 && ul->stats.peak == 0 && dl->stats.avg_high == 0 && ul->stats.avg_high == 0,
          "throughput not zero");
  require(a.report.first_ping()->stats.received > 0, "no ping replies");
  require(a.event_log == b.event_log, "event log differs between runs");
}

void orderings() {
  std::vector<metrics::ScenarioReport> reports;
  for (const auto* n : {"test_a", "test_b", "test_c", "test_d"}) reports.push_back(run(n).report);
  const auto verdicts = sim::evaluate(sim::parse_expectations(R"(
dl_peak(test_b) > dl_peak(test_a)
dl_peak(test_a) > dl_peak(test_c)
dl_peak(test_a) > ul_peak(test_a)
dl_peak(test_b) > ul_peak(test_b)
dl_peak(test_c) > ul_peak(test_c)
rtt_min(test_c) <= rtt_min(test_a)
)"),
                                      reports);
  for (const auto& v : verdicts) require(v.pass, v.to_string());
}

void calibrated_magnitudes() {
  const auto a = run("test_a").report;
  const double avg = a.first_ping()->stats.avg;
  const double peak = a.first_throughput(spectrum::Link::DL)->stats.peak;
  require(within(avg, 11.0, 0.2), "avg RTT " + fmt(avg) + " ms");
  require(within(peak, 55.0, 0.2), "DL peak " + fmt(peak) + " Mbps");
}

void determinism() {
  namespace fs = std::filesystem;
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(NRUSIM_TEST_SCENARIO_DIR)) {
    if (e.path().extension() == ".yaml") names.push_back(e.path().stem().string());
  }
  require(!names.empty(), "no bundled scenarios");
  for (const auto& n : names) {
    const auto a = run(n);
    const auto b = run(n);
    require(a.event_log == b.event_log, n + ": event log differs");
    require(metrics::render_jsonl({a.report}) == metrics::render_jsonl({b.report}), n + ": report differs");
  }
}

void lbt_safety() {
  const access::LbtConfig cfg;
  Rng rng(4242);
  {
    access::ChannelOccupancy idle;
    const auto d = access::lbt_gate(idle, cfg, Micros{1000}, Micros{100000}, rng);
    require(d.granted && d.at == Micros{1000} + cfg.cca_duration, "idle grant not at now+cca");
  }
  for (int trial = 0; trial < 100000; ++trial) {
    access::ChannelOccupancy occ;
    const int n = static_cast<int>(rng.uniform_int(0, 6));
    for (int i = 0; i < n; ++i) {
      const auto s = static_cast<std::int64_t>(rng.uniform_int(0, 2000));
      occ.add(access::Burst{Micros{s}, Micros{s + static_cast<std::int64_t>(rng.uniform_int(1, 400))},
                            rng.uniform(-85, -55)});
    }
    const Micros now{static_cast<std::int64_t>(rng.uniform_int(0, 2000))};
    const auto d = access::lbt_gate(occ, cfg, now, now + Micros{5000}, rng);
    if (!d.granted) continue;
    const Micros lo = d.at - cfg.cca_duration;
    bool idle = occ.energy_dbm_at(lo) < cfg.cca_threshold_dbm;
    for (const auto& b : occ.bursts()) {
      for (const auto t : {b.start, b.end}) {
        if (t >= lo && t <= d.at && occ.energy_dbm_at(t) >= cfg.cca_threshold_dbm) idle = false;
      }
    }
    require(idle, "grant into energy at trial " + std::to_string(trial));
  }
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  int failures = 0;
  auto criterion = [&](const std::string& name, const std::function<void()>& fn) {
    std::string detail;
    bool ok = false;
    try {
      fn();
      ok = true;
    } catch (const Failure& f) {
      detail = f.why;
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::cout << (ok ? "PASS " : "FAIL ") << name << (detail.empty() ? "" : "  (" + detail + ")") << std::endl;
  };

  criterion("raster-exactness", raster_exactness);
  criterion("frequency-edges", frequency_edges);
  criterion("regulatory-boundaries", regulatory_boundaries);
  criterion("gtpu-codec", gtpu_codec);
  criterion("north-south-east-west", functional_replication);
  criterion("ip-allocation", ip_allocation);
  criterion("test-d-reproduction", test_d_reproduction);
  criterion("orderings", orderings);
  criterion("calibrated-magnitudes", calibrated_magnitudes);
  criterion("determinism", determinism);
  criterion("lbt-safety", lbt_safety);
  criterion("suite-runtime", [&] {
    const auto dt = seconds_since(t0);
    require(dt < 60.0, "took " + fmt(dt) + " s");
  });
  return failures == 0 ? 0 : 1;
}
