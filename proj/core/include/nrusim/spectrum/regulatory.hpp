/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nrusim/common/units.hpp"
#include "nrusim/spectrum/band_plan.hpp"

namespace nrusim::spectrum {

/// One jurisdictional constraint on a frequency range.
struct RegulatoryRule {
  std::string jurisdiction;
  Frequency low;
  Frequency high;
  /// Maximum mean EIRP in mW; unbounded when empty.
  std::optional<double> max_mean_eirp_mw;
  bool indoor_only = false;

  void validate() const;
};

struct ChannelAssignment {
  std::string band_id;
  Arfcn arfcn;
  Frequency bandwidth;
  double eirp_mw = 0.0;
  bool indoor = true;
};

/// Occupied emission, independent of any raster.
struct Emission {
  Frequency centre;
  Frequency bandwidth;
  double eirp_mw = 0.0;
  bool indoor = true;

  Frequency low_edge() const { return centre - Frequency::from_khz(bandwidth.khz() / 2); }
  Frequency high_edge() const { return centre + Frequency::from_khz(bandwidth.khz() - bandwidth.khz() / 2); }
};

enum class ViolationKind { EirpExceeded, IndoorOnly };

struct Violation {
  ViolationKind kind;
  /// Index into the rule list passed to check_regulatory.
  std::size_t rule_index;
  std::string message;
};

/// Occupied span is centre +- bandwidth/2 with closed-interval overlap.
std::vector<Violation> check_regulatory(const Emission& emission,
                                        const std::vector<RegulatoryRule>& rules,
                                        std::string_view jurisdiction = "AU");

std::vector<Violation> check_regulatory(const ChannelAssignment& assignment,
                                        const std::vector<RegulatoryRule>& rules,
                                        std::string_view jurisdiction = "AU");

Emission emission_of(const ChannelAssignment& assignment);

/// Raster validity plus carrier edges inside the band's raster span (DL).
/// Returns a human-readable reason on failure.
std::optional<std::string> validate_assignment(const BandPlan& band, const ChannelAssignment& a);

std::vector<RegulatoryRule> load_regulatory_rules(const std::string& path);

std::string_view to_string(ViolationKind kind);

}  // namespace nrusim::spectrum
