/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstddef>
#include <optional>

#include "nrusim/spectrum/band_plan.hpp"

namespace nrusim::access {

struct CellSearchResult {
  std::optional<spectrum::Gscn> found;
  /// Candidates examined, one unit per GSCN.
  std::size_t steps = 0;
};

/// Ordered sweep of the band's sync raster. A gNB broadcasting outside the
/// band's GSCN set is never seen.
CellSearchResult ue_cell_search(const spectrum::BandPlan& band, std::optional<spectrum::Gscn> broadcasting);

}  // namespace nrusim::access
