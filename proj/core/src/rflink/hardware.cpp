/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/rflink/hardware.hpp"

#include <cmath>
#include <cstdio>

#include "../common/yaml_support.hpp"
#include "nrusim/common/error.hpp"

namespace nrusim::rflink {

void SdrModel::validate() const {
  if (name.empty()) throw ValidationError("sdr", 0, "empty SDR name");
  if (max_bandwidth.khz() <= 0) throw ValidationError("sdr " + name, 0, "max_bandwidth must be positive");
}

void HostModel::validate() const {
  if (capacity.sps() <= 0) throw ValidationError("host " + name, 0, "capacity must be positive");
  if (colocated_core_load.sps() < 0) throw ValidationError("host " + name, 0, "core load must be non-negative");
}

void LinkMedium::validate() const {
  if (const auto* air = std::get_if<OverAir>(&kind)) {
    if (!std::isfinite(air->distance_m) || air->distance_m <= 0.0) {
      throw DomainError("over-air distance must be positive");
    }
  } else {
    const auto& c = std::get<Cable>(kind);
    if (!std::isfinite(c.length_cm) || c.length_cm <= 0.0) throw DomainError("cable length must be positive");
    if (!std::isfinite(c.attenuator_db) || c.attenuator_db < 0.0) {
      throw DomainError("attenuator must be non-negative");
    }
  }
}

std::string LinkMedium::describe() const {
  char buf[96];
  if (const auto* air = std::get_if<OverAir>(&kind)) {
    std::snprintf(buf, sizeof buf, "over-air %.2f m", air->distance_m);
  } else {
    const auto& c = std::get<Cable>(kind);
    std::snprintf(buf, sizeof buf, "cable %.0f cm + %.0f dB attenuator", c.length_cm, c.attenuator_db);
  }
  return buf;
}

HostModel HostProfile::instantiate(bool runs_core) const {
  HostModel m{name, capacity, runs_core ? core_overhead : SampleRate{}};
  m.validate();
  return m;
}

HardwareCatalog HardwareCatalog::load(const std::string& path) {
  const YAML::Node root = detail::load_yaml_file(path);
  if (detail::get<int>(root, "schema_version", path) != 1) {
    throw ValidationError(path + ".schema_version", detail::line_of(root), "unsupported version");
  }
  HardwareCatalog cat;
  const YAML::Node sdrs = detail::require(root, "sdrs", path);
  for (std::size_t i = 0; i < sdrs.size(); ++i) {
    const std::string p = path + ".sdrs[" + std::to_string(i) + "]";
    SdrModel s;
    s.name = detail::get<std::string>(sdrs[i], "name", p);
    s.max_bandwidth = Frequency::parse_mhz(detail::get<std::string>(sdrs[i], "max_bandwidth_mhz", p));
    const auto iface = detail::get<std::string>(sdrs[i], "interface", p);
    if (iface == "USB3") {
      s.interface = SdrInterface::USB3;
    } else if (iface == "Ethernet") {
      s.interface = SdrInterface::Ethernet;
    } else {
      throw ValidationError(p + ".interface", detail::line_of(sdrs[i]), "unknown interface '" + iface + "'");
    }
    try {
      s.validate();
    } catch (const ValidationError& e) {
      throw ValidationError(p, detail::line_of(sdrs[i]), e.what());
    }
    cat.add(std::move(s));
  }
  const YAML::Node hosts = detail::require(root, "hosts", path);
  for (std::size_t i = 0; i < hosts.size(); ++i) {
    const std::string p = path + ".hosts[" + std::to_string(i) + "]";
    HostProfile h;
    h.name = detail::get<std::string>(hosts[i], "name", p);
    h.description = detail::get_opt<std::string>(hosts[i], "description", p).value_or("");
    h.capacity = SampleRate::parse_msps(detail::get<std::string>(hosts[i], "capacity_msps", p));
    h.core_overhead =
        SampleRate::parse_msps(detail::get_opt<std::string>(hosts[i], "core_overhead_msps", p).value_or("0"));
    if (h.capacity.sps() <= 0 || h.core_overhead.sps() < 0) {
      throw ValidationError(p, detail::line_of(hosts[i]), "capacity must be positive, overhead non-negative");
    }
    cat.add(std::move(h));
  }
  return cat;
}

void HardwareCatalog::add(SdrModel sdr) {
  for (const auto& s : sdrs_) {
    if (s.name == sdr.name) throw ConfigError("duplicate SDR profile '" + sdr.name + "'");
  }
  sdrs_.push_back(std::move(sdr));
}

void HardwareCatalog::add(HostProfile host) {
  for (const auto& h : hosts_) {
    if (h.name == host.name) throw ConfigError("duplicate host profile '" + host.name + "'");
  }
  hosts_.push_back(std::move(host));
}

const SdrModel& HardwareCatalog::sdr(std::string_view name) const {
  for (const auto& s : sdrs_) {
    if (s.name == name) return s;
  }
  throw ConfigError("unknown SDR profile '" + std::string(name) + "'");
}

const HostProfile& HardwareCatalog::host(std::string_view name) const {
  for (const auto& h : hosts_) {
    if (h.name == name) return h;
  }
  throw ConfigError("unknown host profile '" + std::string(name) + "'");
}

std::string_view to_string(SdrInterface i) { return i == SdrInterface::USB3 ? "USB3" : "Ethernet"; }

}  // namespace nrusim::rflink
