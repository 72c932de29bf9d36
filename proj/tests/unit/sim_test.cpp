/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "nrusim/common/error.hpp"
#include "nrusim/metrics/passive_monitor.hpp"
#include "nrusim/sim/calibration.hpp"
#include "nrusim/sim/compare.hpp"
#include "nrusim/sim/event_queue.hpp"
#include "nrusim/sim/scenario.hpp"
#include "nrusim/sim/testbed.hpp"
#include "test_support.hpp"

using namespace nrusim;
using namespace nrusim::sim;
using nlohmann::json;

namespace {

std::string text_of(const std::string& name) {
  std::ifstream in(test::scenario_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string replaced(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  if (pos != std::string::npos) text.replace(pos, from.size(), to);
  return text;
}

Scenario variant(const std::string& name, const std::string& from, const std::string& to) {
  return parse_scenario(replaced(text_of(name), from, to), test::scenario_path(name), test::env());
}

RunArtifacts run(const Scenario& s) { return run_scenario(s, test::env()); }

std::vector<json> log_records(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(json::parse(line));
  return out;
}

}  // namespace

TEST(EventQueue, OrdersByTimeThenInsertion) {
  EventQueue q;
  q.push(Micros{5}, "a", "x", {}, {});
  q.push(Micros{1}, "b", "x", {}, {});
  q.push(Micros{5}, "c", "x", {}, {});
  q.push(Micros{1}, "d", "x", {}, {});
  std::string order;
  while (!q.empty()) order += q.pop().actor;
  EXPECT_EQ(order, "bdac");
}

TEST(EventQueue, SimulatorRejectsPast) {
  EventLog log;
  Simulator sim(log);
  sim.at(Micros{10}, "a", "x", {}, [&] { sim.at(Micros{5}, "a", "late", {}, [] {}); });
  EXPECT_THROW(sim.run(), InvariantBreach);
}

TEST(EventQueue, LogIsMonotone) {
  EventLog log;
  log.record(Micros{3}, "a", "x");
  EXPECT_THROW(log.record(Micros{2}, "a", "y"), InvariantBreach);
  EXPECT_EQ(log.digest().size(), 16u);
}

TEST(Calibration, DefaultLoads) {
  const auto c = Calibration::load(test::env().default_calibration());
  EXPECT_EQ(c.viability_threshold, 0.001);
  EXPECT_EQ(c.throughput.interval, Micros{100'000});
}

TEST(Scenario, TestAMatchesHardwareTable) {
  const auto s = test::bundled("test_a");
  EXPECT_EQ(s.cell.band_id, "n46");
  EXPECT_EQ(s.cell.arfcn.value, 750000u);
  EXPECT_EQ(s.cell.bandwidth.khz(), 40000);
  EXPECT_EQ(s.cell.scs_khz, 30);
  EXPECT_EQ(s.cell.attenuation_factor, 12);
  EXPECT_EQ(s.gnb().host, "dell-precision-5820-i9");
  EXPECT_EQ(s.gnb().sdr, "usrp-n300");
  const auto ues = s.nodes_with(NodeRole::Ue);
  ASSERT_EQ(ues.size(), 1u);
  EXPECT_EQ(ues[0]->sdr, "usrp-b210");
  EXPECT_FALSE(ues[0]->medium->is_cable());
  EXPECT_EQ(s.core_node().colocated_with, "gnb1");
}

TEST(Scenario, OffRasterArfcnCitesN46) {
  try {
    variant("test_a", "arfcn: 750000", "arfcn: 795001");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "cell.arfcn");
    EXPECT_GT(e.line(), 0);
    EXPECT_NE(std::string(e.what()).find("n46"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("795000"), std::string::npos);
  }
}

TEST(Scenario, UnknownProfileNamed) {
  try {
    variant("test_a", "sdr: usrp-b210", "sdr: usrp-x310");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("usrp-x310"), std::string::npos);
  }
}

TEST(Scenario, RegulatoryViolationRejected) {
  EXPECT_THROW(variant("test_a", "  attenuation_factor: 12", "  attenuation_factor: 12\n  indoor: false"),
               ValidationError);
}

TEST(Scenario, MissingSeedDefaultsAndIsNoted) {
  const auto s = variant("test_d", "seed: 1\n", "");
  EXPECT_EQ(s.seed, 0u);
  EXPECT_TRUE(s.seed_defaulted);
  const auto a = run(s);
  ASSERT_FALSE(a.report.notes.empty());
  EXPECT_NE(a.report.notes.front().find("seed"), std::string::npos);
}

TEST(Testbed, TestDZeroThroughputNonzeroPing) {
  const auto a = run(test::bundled("test_d"));
  EXPECT_EQ(a.report.gnb_drop_fraction, 0.015);
  EXPECT_FALSE(a.report.link_viable);
  const auto* dl = a.report.first_throughput(spectrum::Link::DL);
  const auto* ul = a.report.first_throughput(spectrum::Link::UL);
  ASSERT_TRUE(dl && ul);
  EXPECT_EQ(dl->stats.peak, 0.0);
  EXPECT_EQ(dl->stats.avg_high, 0.0);
  EXPECT_EQ(ul->stats.peak, 0.0);
  ASSERT_NE(a.report.first_ping(), nullptr);
  EXPECT_GT(a.report.first_ping()->stats.received, 0u);
  EXPECT_GT(a.report.first_ping()->stats.min, 0.0);
}

TEST(Testbed, UnprovisionedUeFailsAtRegistration) {
  const auto s = variant("test_a", "    imsi: \"208950000000031\"\n",
                         "    imsi: \"208950000000077\"\n    provisioned: false\n");
  const auto a = run(s);
  ASSERT_EQ(a.report.attach.size(), 1u);
  EXPECT_EQ(a.report.attach[0].phase, "SYNCED");
  ASSERT_TRUE(a.report.attach[0].failure);
  EXPECT_NE(a.report.attach[0].failure->find("unknown-subscriber"), std::string::npos);
  EXPECT_EQ(a.report.first_ping()->stats.received, 0u);
}

TEST(Testbed, Deterministic) {
  const auto s = test::bundled("test_a");
  const auto a = run(s);
  const auto b = run(s);
  EXPECT_EQ(a.event_log, b.event_log);
  EXPECT_EQ(metrics::render_jsonl({a.report}), metrics::render_jsonl({b.report}));
}

TEST(Testbed, SeedChangesOutcome) {
  const auto a = run(test::bundled("test_a"));
  const auto b = run(variant("test_a", "seed: 1", "seed: 2"));
  EXPECT_NE(a.event_log, b.event_log);
}

TEST(Testbed, EastWestAddresses) {
  const auto a = run(test::bundled("east_west"));
  ASSERT_EQ(a.report.attach.size(), 2u);
  EXPECT_EQ(a.report.attach[0].ue, "ue2");
  EXPECT_EQ(a.report.attach[0].ip, "12.1.1.2");
  EXPECT_EQ(a.report.attach[1].ip, "12.1.1.3");
  const auto* p = a.report.first_ping();
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->stats.received, p->stats.sent);
}

TEST(Testbed, EastWestInnerPacketUnchanged) {
  const auto a = run(test::bundled("east_west"));
  // The request captured leaving ue1 arrives at ue2 byte-identical.
  const auto& out = a.captures.at("ue1");
  const auto& in = a.captures.at("ue2");
  ASSERT_FALSE(out.empty());
  ASSERT_FALSE(in.empty());
  EXPECT_EQ(out.front().bytes, in.front().bytes);
}

TEST(Testbed, NorthSouthOneToOneAtN6) {
  Testbed tb(test::bundled("north_south"), test::env(), Calibration::load(test::env().default_calibration()));
  const auto r = tb.run();
  EXPECT_EQ(r.attach[0].ip, "10.1.1.5");
  const auto& ue = tb.captures().at("ue1");
  const auto& n6 = tb.captures().at("n6");
  EXPECT_EQ(ue.size(), n6.size());
  EXPECT_EQ(tb.upf_counters().n6_egress, r.first_ping()->stats.sent);
  EXPECT_EQ(tb.upf_counters().n6_ingress, r.first_ping()->stats.received);
}

TEST(Testbed, PassiveRttMatchesActiveAtUeTap) {
  const auto a = run(test::bundled("north_south"));
  double last_rtt_ms = -1;
  for (const auto& rec : log_records(a.event_log)) {
    if (rec["action"] == "ping.reply") last_rtt_ms = rec["rtt_us"].get<double>() / 1000.0;
  }
  const auto sessions = metrics::passive_monitor(a.captures.at("ue1"));
  ASSERT_EQ(sessions.size(), 1u);
  ASSERT_TRUE(sessions[0].rtt_latest_ms);
  EXPECT_NEAR(*sessions[0].rtt_latest_ms, last_rtt_ms, 1e-9);
  // The core-side tap sits one hop nearer the responder.
  const auto n6 = metrics::passive_monitor(a.captures.at("n6"));
  EXPECT_LE(*n6[0].rtt_latest_ms, last_rtt_ms);
}

TEST(Testbed, ReportRecomputableFromLog) {
  const auto a = run(test::bundled("test_a"));
  std::vector<double> rtts;
  std::map<std::string, std::vector<double>> bits;
  std::string current;
  for (const auto& rec : log_records(a.event_log)) {
    if (rec["action"] == "ping.reply") rtts.push_back(rec["rtt_us"].get<double>() / 1000.0);
    if (rec["action"] == "iperf.start") current = rec["direction"];
    if (rec["action"] == "iperf.delivered") bits[current].push_back(rec["bits"].get<double>());
  }
  const auto ping = metrics::summarize_ping(rtts, 100);
  const auto& rp = a.report.first_ping()->stats;
  EXPECT_EQ(metrics::report_round(ping.avg), rp.avg);
  EXPECT_EQ(metrics::report_round(ping.min), rp.min);
  EXPECT_EQ(metrics::report_round(ping.mdev), rp.mdev);
  for (const auto dir : {spectrum::Link::UL, spectrum::Link::DL}) {
    metrics::ThroughputMeter m(dir);
    const auto& b = bits[std::string(spectrum::to_string(dir))];
    for (std::size_t i = 0; i < b.size(); ++i) m.record_interval(i, b[i]);
    const auto s = m.summarize();
    const auto& rs = a.report.first_throughput(dir)->stats;
    EXPECT_EQ(metrics::report_round(s.peak), rs.peak);
    EXPECT_EQ(metrics::report_round(s.avg_low), rs.avg_low);
  }
}

TEST(Testbed, LogTimestampsNondecreasing) {
  const auto a = run(test::bundled("east_west"));
  std::int64_t last = -1;
  for (const auto& rec : log_records(a.event_log)) {
    const auto t = rec["t_us"].get<std::int64_t>();
    ASSERT_GE(t, last);
    last = t;
  }
}

TEST(Testbed, SlotShareFollowsTdd) {
  Testbed tb(test::bundled("test_b"), test::env(), Calibration::load(test::env().default_calibration()));
  const auto ul = tb.throughput_test("ue1", spectrum::Link::UL, Micros{10'000'000});
  const auto dl = tb.throughput_test("ue1", spectrum::Link::DL, Micros{10'000'000});
  ASSERT_GT(ul.slots_granted, 0u);
  EXPECT_EQ(dl.slots_granted * 2, ul.slots_granted * 7);
}

TEST(Testbed, ThroughputZeroWhenNotViable) {
  for (const auto* gnb_sdr : {"usrp-b210", "usrp-n300"}) {
    const auto s = variant("test_d", "sdr: usrp-b210}", std::string("sdr: ") + gnb_sdr + "}");
    Testbed tb(s, test::env(), Calibration::load(test::env().default_calibration()));
    for (const auto dir : {spectrum::Link::UL, spectrum::Link::DL}) {
      const auto r = tb.throughput_test("ue1", dir, Micros{3'000'000});
      EXPECT_EQ(r.stats.peak, 0.0);
      EXPECT_EQ(r.stats.avg_high, 0.0);
    }
  }
}

TEST(Testbed, WifiOccupancyCostsSlots) {
  const auto s = variant("test_b", "taps: [ue1, n3]",
                         "taps: [ue1, n3]\noccupancy:\n  wifi: {mean_gap_us: 3000, mean_duration_us: 1500, "
                         "power_dbm: -60}");
  const auto busy = run(s);
  const auto quiet = run(test::bundled("test_b"));
  const auto* b = busy.report.first_throughput(spectrum::Link::DL);
  const auto* q = quiet.report.first_throughput(spectrum::Link::DL);
  EXPECT_GT(b->slots_lost_to_lbt, 0u);
  EXPECT_LT(b->slots_granted, q->slots_granted);
  EXPECT_EQ(q->slots_lost_to_lbt, 0u);
}

TEST(Testbed, StaleEventAborts) {
  const auto s = variant("test_a", "taps: [ue1, n3]", "taps: [ue1, n3]\nfaults:\n  - {kind: stale-event, at_ms: 5}");
  try {
    run(s);
    FAIL() << "expected RunAborted";
  } catch (const RunAborted& e) {
    EXPECT_FALSE(e.event_log().empty());
  }
}

TEST(Compare, Examples) {
  const auto a = run(test::bundled("test_a")).report;
  const auto b = run(test::bundled("test_b")).report;
  const auto c = run(test::bundled("test_c")).report;
  const auto v = evaluate(parse_expectations("dl_peak(test_b) > dl_peak(test_a)\nrtt_min(test_c) <= rtt_min(test_a)\n"),
                          {a, b, c});
  ASSERT_EQ(v.size(), 2u);
  EXPECT_TRUE(v[0].pass) << v[0].to_string();
  EXPECT_TRUE(v[1].pass) << v[1].to_string();
  for (const auto& x : compare_reports(a, a)) {
    EXPECT_EQ(x.expectation.relation, Relation::Equal) << x.to_string();
    EXPECT_TRUE(x.pass);
  }
}

TEST(Compare, ParseErrors) {
  EXPECT_THROW(Expectation::parse("dl_peak(a) >> dl_peak(b)"), ConfigError);
  EXPECT_THROW(Expectation::parse("speed(a) > speed(b)"), ConfigError);
  const auto e = Expectation::parse("  ul_peak(test_a)=ul_peak(test_b) ");
  EXPECT_EQ(e.relation, Relation::Equal);
  EXPECT_EQ(e.rhs.report, "test_b");
}

TEST(Compare, MissingReportFails) {
  const auto v = evaluate({Expectation::parse("dl_peak(x) > dl_peak(y)")}, {});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_FALSE(v[0].pass);
}
