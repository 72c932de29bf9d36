/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nrusim/common/units.hpp"

namespace nrusim::rflink {

enum class SdrInterface { USB3, Ethernet };

struct SdrModel {
  std::string name;
  Frequency max_bandwidth;
  SdrInterface interface = SdrInterface::USB3;

  void validate() const;
};

/// Host PC running a gNB, UE or core.
struct HostModel {
  std::string name;
  /// Sample rate the host sustains without drops when otherwise idle.
  SampleRate capacity;
  /// Processing taken by a co-located 5G core, in sample-rate equivalents.
  SampleRate colocated_core_load;

  void validate() const;
  SampleRate available() const { return capacity - colocated_core_load; }
};

struct OverAir {
  double distance_m = 1.0;
};

struct Cable {
  double length_cm = 50.0;
  double attenuator_db = 0.0;
};

struct LinkMedium {
  std::variant<OverAir, Cable> kind;

  /// Throws DomainError for non-physical values.
  void validate() const;
  bool is_cable() const { return std::holds_alternative<Cable>(kind); }
  std::string describe() const;
};

/// Host profile as stored on disk; `core_overhead` applies only to hosts that
/// also run the 5G core.
struct HostProfile {
  std::string name;
  std::string description;
  SampleRate capacity;
  SampleRate core_overhead;

  HostModel instantiate(bool runs_core) const;
};

class HardwareCatalog {
 public:
  static HardwareCatalog load(const std::string& path);

  const SdrModel& sdr(std::string_view name) const;
  const HostProfile& host(std::string_view name) const;
  const std::vector<SdrModel>& sdrs() const { return sdrs_; }
  const std::vector<HostProfile>& hosts() const { return hosts_; }

  void add(SdrModel sdr);
  void add(HostProfile host);

 private:
  std::vector<SdrModel> sdrs_;
  std::vector<HostProfile> hosts_;
};

std::string_view to_string(SdrInterface i);

}  // namespace nrusim::rflink
