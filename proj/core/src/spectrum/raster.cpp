/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/spectrum/raster.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace nrusim::spectrum {
namespace {

// NR global raster and synchronization raster constants, 3000 - 24250 MHz.
constexpr std::array kGlobalSegments{
    GlobalRasterSegment{Frequency::from_khz(3'000'000), Frequency::from_khz(15), 600000, 600000,
                        2016666, Frequency::from_khz(3'000'000), Frequency::from_khz(24'250'000)},
};

constexpr std::array kSyncSegments{
    SyncRasterSegment{Frequency::from_khz(3'000'000), Frequency::from_khz(1440), 7499, 7499, 22255},
};

const GlobalRasterSegment* segment_for(Arfcn n) {
  for (const auto& s : kGlobalSegments) {
    if (n.value >= s.first_index && n.value <= s.last_index) return &s;
  }
  return nullptr;
}

std::string describe_segments() {
  std::string out;
  for (const auto& s : kGlobalSegments) {
    if (!out.empty()) out += ", ";
    out += std::to_string(s.first_index) + ".." + std::to_string(s.last_index) + " (" +
           s.lower_edge.to_mhz_string() + "-" + s.upper_edge.to_mhz_string() + " MHz)";
  }
  return out;
}

}  // namespace

std::span<const GlobalRasterSegment> global_raster_segments() { return kGlobalSegments; }
std::span<const SyncRasterSegment> sync_raster_segments() { return kSyncSegments; }

Frequency arfcn_to_frequency(Arfcn arfcn) {
  const auto* s = segment_for(arfcn);
  if (s == nullptr) {
    throw RangeError("NR-ARFCN " + std::to_string(arfcn.value) +
                     " outside the supported raster segment " + describe_segments());
  }
  const auto steps = static_cast<std::int64_t>(arfcn.value) - s->offset_index;
  return Frequency::from_khz(s->offset_frequency.khz() + s->granularity.khz() * steps);
}

Arfcn frequency_to_arfcn(Frequency freq) {
  for (const auto& s : kGlobalSegments) {
    if (freq < s.lower_edge || freq > s.upper_edge) continue;
    const std::int64_t delta = freq.khz() - s.offset_frequency.khz();
    const std::int64_t q = delta / s.granularity.khz();
    const std::int64_t r = delta % s.granularity.khz();
    const auto below = static_cast<std::uint32_t>(s.offset_index + q);
    if (r != 0) {
      throw RasterError(freq.to_mhz_string() + " MHz is not on the " +
                            s.granularity.to_mhz_string() + " MHz raster; nearest NR-ARFCN " +
                            std::to_string(below) + " and " + std::to_string(below + 1),
                        Arfcn{below}, Arfcn{below + 1});
    }
    if (below > s.last_index) {
      throw RangeError(freq.to_mhz_string() + " MHz maps past the last NR-ARFCN " +
                       std::to_string(s.last_index));
    }
    return Arfcn{below};
  }
  throw RangeError(freq.to_mhz_string() + " MHz outside the supported raster segment " +
                   describe_segments());
}

Frequency gscn_to_ss_frequency(Gscn gscn) {
  for (const auto& s : kSyncSegments) {
    if (gscn.value < s.first_gscn || gscn.value > s.last_gscn) continue;
    const auto n = static_cast<std::int64_t>(gscn.value) - s.offset_gscn;
    return Frequency::from_khz(s.offset_frequency.khz() + s.step.khz() * n);
  }
  std::string segs;
  for (const auto& s : kSyncSegments) {
    segs += std::to_string(s.first_gscn) + ".." + std::to_string(s.last_gscn);
  }
  throw RangeError("GSCN " + std::to_string(gscn.value) + " outside the supported segment " + segs);
}

std::vector<SsCandidate> ss_scan_candidates(const BandPlan& band) {
  std::vector<SsCandidate> out;
  for (const auto& e : band.sync_entries) {
    for (std::uint32_t g = e.gscn_range.first; g <= e.gscn_range.last; g += e.gscn_range.step) {
      out.push_back({Gscn{g}, gscn_to_ss_frequency(Gscn{g})});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.gscn < b.gscn; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FrequencySpan raster_span(const BandPlan& band, Link link) {
  bool any = false;
  FrequencySpan span{};
  for (const auto& row : band.channel_rasters) {
    const auto& r = link == Link::UL ? row.ul : row.dl;
    if (!r) continue;
    const auto lo = arfcn_to_frequency(Arfcn{r->first});
    const auto hi = arfcn_to_frequency(Arfcn{r->last});
    if (!any || lo < span.low) span.low = lo;
    if (!any || hi > span.high) span.high = hi;
    any = true;
  }
  if (!any) {
    throw RangeError("band " + band.band_id + " has no " + std::string(to_string(link)) + " raster");
  }
  return span;
}

std::optional<Gscn> nearest_gscn_at_or_below(const BandPlan& band, Frequency centre) {
  std::optional<Gscn> best;
  for (const auto& c : ss_scan_candidates(band)) {
    if (c.frequency <= centre) best = c.gscn;
  }
  return best;
}

}  // namespace nrusim::spectrum
