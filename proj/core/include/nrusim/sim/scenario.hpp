/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nrusim/access/lbt.hpp"
#include "nrusim/access/tdd.hpp"
#include "nrusim/common/ipv4.hpp"
#include "nrusim/common/units.hpp"
#include "nrusim/corenet/core_network.hpp"
#include "nrusim/rflink/hardware.hpp"
#include "nrusim/spectrum/band_plan.hpp"
#include "nrusim/spectrum/regulatory.hpp"

namespace nrusim::sim {

/// Reference data a scenario is resolved against.
struct Environment {
  std::string data_dir;
  spectrum::BandTable bands;
  rflink::HardwareCatalog hardware;
  std::vector<spectrum::RegulatoryRule> rules;

  /// $NRUSIM_DATA_DIR when set, else the directory the library was built with.
  static std::string default_data_dir();
  static Environment load(const std::string& data_dir = default_data_dir());
  std::string default_calibration() const { return data_dir + "/calibration.yaml"; }
};

enum class NodeRole { Gnb, Ue, Core, External };

struct CellConfig {
  std::string band_id = "n46";
  spectrum::Arfcn arfcn;
  Frequency bandwidth;
  int scs_khz = 30;
  /// Reference-signal power per resource element.
  double tx_power_dbm = 0.0;
  double attenuation_factor = 0.0;
  /// GSCN the gNB's SS block sits on; resolved to the raster point at or
  /// below the carrier when omitted.
  std::optional<spectrum::Gscn> gscn;
  bool on_air = true;
  access::TddConfig tdd;
  access::LbtConfig lbt;
  /// Total mean EIRP; derived from tx_power over the carrier when omitted.
  std::optional<double> eirp_mw;
  bool indoor = true;
  std::string jurisdiction = "AU";
  bool regulatory_override = false;
};

struct NodeSpec {
  std::string name;
  NodeRole role = NodeRole::Ue;
  std::string host;
  std::string sdr;
  std::string imsi;
  bool provisioned = true;
  std::optional<rflink::LinkMedium> medium;
  /// Core only: gNB node sharing its machine.
  std::string colocated_with;
  /// External host only.
  std::optional<Ipv4Address> address;
  std::optional<Micros> one_way_delay;
  int line = 0;
};

struct CoreSpec {
  corenet::CoreConfig config;
  std::vector<corenet::SubscriberRecord> subscribers;
  /// Sessions left over from earlier use; they hold the lowest pool addresses.
  int prior_sessions = 0;
  Ipv4Address gnb_n3_address = Ipv4Address(192, 168, 70, 129);
};

enum class ProbeKind { Ping, Throughput };

struct ProbeSpec {
  ProbeKind kind = ProbeKind::Ping;
  std::string from;
  /// "gateway", a node name or a dotted address.
  std::string to = "gateway";
  std::uint32_t count = 100;
  Micros interval{1'000'000};
  std::size_t data_size = 56;
  spectrum::Link direction = spectrum::Link::DL;
  Micros duration{30'000'000};
  int line = 0;
};

struct WifiTraffic {
  Micros mean_gap{0};
  Micros mean_duration{0};
  double power_dbm = 0.0;
};

struct OccupancySpec {
  std::vector<access::Burst> bursts;
  std::optional<WifiTraffic> wifi;
};

enum class FaultKind { StaleEvent };

/// Deliberate faults for exercising the abort path.
struct FaultSpec {
  FaultKind kind = FaultKind::StaleEvent;
  Micros at{0};
};

struct Scenario {
  static constexpr int kSchemaVersion = 1;

  std::string name;
  std::string description;
  std::string source;
  std::uint64_t seed = 0;
  bool seed_defaulted = false;
  std::string calibration;
  Micros duration{600'000'000};
  CellConfig cell;
  CoreSpec core;
  std::vector<NodeSpec> nodes;
  std::vector<ProbeSpec> traffic;
  OccupancySpec occupancy;
  std::vector<std::string> taps;
  std::vector<FaultSpec> faults;
  /// Source line of parsed fields, keyed by dotted path.
  std::map<std::string, int> field_lines;

  int line_of(const std::string& field) const;
  const NodeSpec* find_node(std::string_view name) const;
  const NodeSpec& node(std::string_view name) const;
  std::vector<const NodeSpec*> nodes_with(NodeRole role) const;
  const NodeSpec& gnb() const;
  const NodeSpec& core_node() const;
  /// Time the traffic plan needs, ignoring the final reply wait.
  Micros planned_traffic_time() const;
};

/// Parses and fully validates a scenario file. Errors carry the field path
/// and source line.
Scenario load_scenario(const std::string& path, const Environment& env);
Scenario parse_scenario(const std::string& yaml_text, const std::string& source, const Environment& env);

/// Cross-reference and invariant checks; load_scenario already calls this.
void validate_scenario(const Scenario& s, const Environment& env);

spectrum::ChannelAssignment channel_assignment(const CellConfig& cell);
double derived_eirp_mw(const CellConfig& cell);

std::string_view to_string(NodeRole r);

}  // namespace nrusim::sim
