/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <span>
#include <vector>

#include "nrusim/common/error.hpp"
#include "nrusim/common/units.hpp"
#include "nrusim/spectrum/band_plan.hpp"

namespace nrusim::spectrum {

/// A segment of the NR global frequency raster:
/// F = offset_frequency + granularity * (N - offset_index), first <= N <= last.
struct GlobalRasterSegment {
  Frequency offset_frequency;
  Frequency granularity;
  std::uint32_t offset_index;
  std::uint32_t first_index;
  std::uint32_t last_index;
  Frequency lower_edge;
  Frequency upper_edge;
};

/// A segment of the synchronization raster:
/// SS = offset_frequency + step * (GSCN - offset_gscn).
struct SyncRasterSegment {
  Frequency offset_frequency;
  Frequency step;
  std::uint32_t offset_gscn;
  std::uint32_t first_gscn;
  std::uint32_t last_gscn;
};

/// Frequency not on the 15 kHz grid; carries the neighbouring raster points.
class RasterError : public Error {
 public:
  RasterError(const std::string& what, Arfcn below, Arfcn above)
      : Error(what), below_(below), above_(above) {}
  Arfcn below() const { return below_; }
  Arfcn above() const { return above_; }

 private:
  Arfcn below_;
  Arfcn above_;
};

/// The encoded raster segments (3 - 24.25 GHz).
std::span<const GlobalRasterSegment> global_raster_segments();
std::span<const SyncRasterSegment> sync_raster_segments();

/// Throws RangeError outside 600000 <= arfcn <= 2016666.
Frequency arfcn_to_frequency(Arfcn arfcn);

/// Exact inverse of arfcn_to_frequency. Off-grid input throws RasterError
/// carrying the two nearest indices; input outside 3000 - 24250 MHz throws
/// RangeError.
Arfcn frequency_to_arfcn(Frequency freq);

/// SS block centre frequency. Throws RangeError outside 7499 <= gscn <= 22255.
Frequency gscn_to_ss_frequency(Gscn gscn);

struct SsCandidate {
  Gscn gscn;
  Frequency frequency;
  bool operator==(const SsCandidate&) const = default;
};

/// Every GSCN of the band's sync raster in ascending order (duplicates from
/// overlapping entries removed).
std::vector<SsCandidate> ss_scan_candidates(const BandPlan& band);

/// Lowest and highest carrier frequency reachable on the band's raster for
/// `link`. Throws RangeError if the raster is outside the encoded segments.
struct FrequencySpan {
  Frequency low;
  Frequency high;
};
FrequencySpan raster_span(const BandPlan& band, Link link);

/// The highest GSCN whose SS frequency is <= `centre` and that is on the
/// band's sync raster; nullopt when none.
std::optional<Gscn> nearest_gscn_at_or_below(const BandPlan& band, Frequency centre);

}  // namespace nrusim::spectrum
