/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/spectrum/regulatory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "../common/yaml_support.hpp"
#include "nrusim/common/error.hpp"
#include "nrusim/spectrum/raster.hpp"

namespace nrusim::spectrum {
namespace {

std::string fmt_mw(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

void RegulatoryRule::validate() const {
  if (jurisdiction.empty()) throw ValidationError("jurisdiction", 0, "empty jurisdiction");
  if (!(low < high)) throw ValidationError("rule " + jurisdiction, 0, "freq_low must be below freq_high");
  if (max_mean_eirp_mw && !(*max_mean_eirp_mw > 0.0)) {
    throw ValidationError("rule " + jurisdiction, 0, "max_mean_eirp must be positive when bounded");
  }
}

std::vector<Violation> check_regulatory(const Emission& emission,
                                        const std::vector<RegulatoryRule>& rules,
                                        std::string_view jurisdiction) {
  const bool known = std::any_of(rules.begin(), rules.end(),
                                 [&](const auto& r) { return r.jurisdiction == jurisdiction; });
  if (!known) throw ConfigError("no regulatory rules for jurisdiction '" + std::string(jurisdiction) + "'");

  const Frequency lo = emission.low_edge();
  const Frequency hi = emission.high_edge();
  std::vector<Violation> out;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& rule = rules[i];
    if (rule.jurisdiction != jurisdiction) continue;
    if (lo > rule.high || hi < rule.low) continue;
    const std::string span = rule.low.to_mhz_string() + "-" + rule.high.to_mhz_string() + " MHz";
    if (rule.max_mean_eirp_mw && emission.eirp_mw > *rule.max_mean_eirp_mw) {
      out.push_back({ViolationKind::EirpExceeded, i,
                     "mean EIRP " + fmt_mw(emission.eirp_mw) + " mW exceeds " +
                         fmt_mw(*rule.max_mean_eirp_mw) + " mW in " + span});
    }
    if (rule.indoor_only && !emission.indoor) {
      out.push_back({ViolationKind::IndoorOnly, i, span + " is restricted to indoor use"});
    }
  }
  return out;
}

Emission emission_of(const ChannelAssignment& a) {
  return Emission{arfcn_to_frequency(a.arfcn), a.bandwidth, a.eirp_mw, a.indoor};
}

std::vector<Violation> check_regulatory(const ChannelAssignment& assignment,
                                        const std::vector<RegulatoryRule>& rules,
                                        std::string_view jurisdiction) {
  return check_regulatory(emission_of(assignment), rules, jurisdiction);
}

std::optional<std::string> validate_assignment(const BandPlan& band, const ChannelAssignment& a) {
  if (a.band_id != band.band_id) return "assignment band " + a.band_id + " does not match " + band.band_id;
  if (a.bandwidth.khz() <= 0) return std::string("bandwidth must be positive");
  if (!validate_channel(band, a.arfcn, Link::DL)) {
    const auto r = band.raster(Link::DL);
    std::string msg = "NR-ARFCN " + std::to_string(a.arfcn.value) + " is not on the " + band.band_id + " raster";
    if (r) {
      msg += " (" + std::to_string(r->first) + " - <" + std::to_string(r->step) + "> - " +
             std::to_string(r->last) + ")";
    }
    return msg;
  }
  const auto e = emission_of(a);
  const auto span = raster_span(band, Link::DL);
  if (e.low_edge() < span.low || e.high_edge() > span.high) {
    return "carrier " + e.low_edge().to_mhz_string() + "-" + e.high_edge().to_mhz_string() +
           " MHz extends outside band " + band.band_id + " (" + span.low.to_mhz_string() + "-" +
           span.high.to_mhz_string() + " MHz)";
  }
  return std::nullopt;
}

std::vector<RegulatoryRule> load_regulatory_rules(const std::string& path) {
  const YAML::Node root = detail::load_yaml_file(path);
  if (detail::get<int>(root, "schema_version", path) != 1) {
    throw ValidationError(path + ".schema_version", detail::line_of(root), "unsupported version");
  }
  std::vector<RegulatoryRule> rules;
  const YAML::Node list = detail::require(root, "rules", path);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& n = list[i];
    const std::string p = path + ".rules[" + std::to_string(i) + "]";
    RegulatoryRule r;
    r.jurisdiction = detail::get<std::string>(n, "jurisdiction", p);
    r.low = Frequency::parse_mhz(detail::get<std::string>(n, "freq_low_mhz", p));
    r.high = Frequency::parse_mhz(detail::get<std::string>(n, "freq_high_mhz", p));
    r.max_mean_eirp_mw = detail::get_opt<double>(n, "max_mean_eirp_mw", p);
    r.indoor_only = detail::get_opt<bool>(n, "indoor_only", p).value_or(false);
    try {
      r.validate();
    } catch (const ValidationError& e) {
      throw ValidationError(p, detail::line_of(n), e.what());
    }
    rules.push_back(std::move(r));
  }
  return rules;
}

std::string_view to_string(ViolationKind kind) {
  return kind == ViolationKind::EirpExceeded ? "eirp-exceeded" : "indoor-only";
}

}  // namespace nrusim::spectrum
