/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nrusim/access/ue.hpp"
#include "nrusim/metrics/report.hpp"
#include "nrusim/sim/calibration.hpp"
#include "nrusim/sim/event_queue.hpp"
#include "nrusim/sim/scenario.hpp"
#include "nrusim/userplane/pcap.hpp"
#include "nrusim/userplane/upf.hpp"

namespace nrusim::sim {

/// One scenario instantiated on the event loop: gNB, UEs, core with UPF,
/// external responders and capture taps.
class Testbed {
 public:
  Testbed(Scenario scenario, const Environment& env, Calibration calibration);
  ~Testbed();
  Testbed(const Testbed&) = delete;
  Testbed& operator=(const Testbed&) = delete;

  /// Attaches every UE in file order.
  void attach_all();

  /// ICMP echo through the full stack. Unknown or unreachable targets give
  /// zero replies.
  metrics::PingStats ping(const std::string& from, Ipv4Address dst, std::uint32_t count, Micros interval,
                          std::size_t data_size = 56);
  /// Saturating transfer between a UE and the core host.
  metrics::ThroughputResult throughput_test(const std::string& ue, spectrum::Link direction, Micros duration);

  /// Attach, traffic plan, report. Throws InvariantBreach on a runtime
  /// breach; the event log stays readable for diagnosis.
  metrics::ScenarioReport run();

  /// Resolves "gateway", a node name or a dotted address.
  Ipv4Address resolve(const std::string& target) const;

  const Scenario& scenario() const;
  const EventLog& log() const;
  const access::UeState& ue_state(const std::string& ue) const;
  const corenet::CoreNetwork& core() const;
  const userplane::UpfCounters& upf_counters() const;
  const std::map<std::string, std::vector<userplane::CapturedPacket>>& captures() const;
  double gnb_drop_fraction() const;
  bool link_viable(const std::string& ue) const;
  double rsrp_dbm(const std::string& ue) const;
  Micros now() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct RunArtifacts {
  metrics::ScenarioReport report;
  std::string event_log;
  std::map<std::string, std::vector<userplane::CapturedPacket>> captures;
};

/// A run stopped on a runtime invariant breach; carries the event log up to
/// the breach.
class RunAborted : public InvariantBreach {
 public:
  RunAborted(const std::string& what, std::string event_log)
      : InvariantBreach(what), event_log_(std::move(event_log)) {}
  const std::string& event_log() const { return event_log_; }

 private:
  std::string event_log_;
};

/// Loads the scenario's calibration and runs it. Throws RunAborted on a
/// runtime invariant breach.
RunArtifacts run_scenario(const Scenario& scenario, const Environment& env);

}  // namespace nrusim::sim
