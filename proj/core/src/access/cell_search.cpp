/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/access/cell_search.hpp"

#include "nrusim/spectrum/raster.hpp"

namespace nrusim::access {

CellSearchResult ue_cell_search(const spectrum::BandPlan& band, std::optional<spectrum::Gscn> broadcasting) {
  CellSearchResult r;
  for (const auto& c : spectrum::ss_scan_candidates(band)) {
    ++r.steps;
    if (broadcasting && c.gscn == *broadcasting) {
      r.found = c.gscn;
      return r;
    }
  }
  return r;
}

}  // namespace nrusim::access
