/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nrusim/metrics/passive_monitor.hpp"
#include "nrusim/metrics/stats.hpp"

namespace nrusim::metrics {

struct AttachSummary {
  std::string ue;
  std::string phase;
  std::optional<std::string> ip;
  std::optional<std::string> failure;
  std::optional<std::uint32_t> gscn;
  std::size_t scan_steps = 0;
};

struct LinkSummary {
  std::string ue;
  std::string medium;
  double rsrp_dbm = 0.0;
  double ue_drop_fraction = 0.0;
  bool viable = true;
};

struct PingResult {
  std::string from;
  std::string to;
  PingStats stats;
};

struct ThroughputResult {
  std::string ue;
  ThroughputStats stats;
  std::uint64_t slots_granted = 0;
  std::uint64_t slots_lost_to_lbt = 0;
};

struct TapSummary {
  std::string tap;
  std::uint64_t frames = 0;
  std::uint64_t unparseable = 0;
  std::vector<PassiveSession> sessions;
};

struct ScenarioReport {
  static constexpr int kSchemaVersion = 1;

  std::string name;
  std::uint64_t seed = 0;
  bool seed_defaulted = false;
  double gnb_drop_fraction = 0.0;
  bool link_viable = true;
  std::vector<LinkSummary> links;
  std::vector<AttachSummary> attach;
  std::vector<PingResult> pings;
  std::vector<ThroughputResult> throughput;
  std::vector<TapSummary> taps;
  std::vector<std::string> notes;
  std::uint64_t event_count = 0;
  /// FNV-1a 64 of the serialized event log, hex.
  std::string event_log_digest;

  const PingResult* first_ping() const;
  const ThroughputResult* first_throughput(spectrum::Link dir) const;
};

/// Rounds a reported quantity to the precision used by every rendering.
double report_round(double v);

nlohmann::json to_json(const ScenarioReport& r);
/// Throws ConfigError when the record's schema differs.
ScenarioReport report_from_json(const nlohmann::json& j);

/// One JSON object per line.
std::string render_jsonl(const std::vector<ScenarioReport>& reports);
std::vector<ScenarioReport> parse_jsonl(const std::string& text);

/// Human table: one row per scenario with RTT, uplink and downlink columns.
std::string render_table(const std::vector<ScenarioReport>& reports);

}  // namespace nrusim::metrics
