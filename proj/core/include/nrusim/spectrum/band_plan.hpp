/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nrusim::spectrum {

/// Index on the NR global frequency raster.
struct Arfcn {
  std::uint32_t value = 0;
  constexpr auto operator<=>(const Arfcn&) const = default;
};

/// Global Synchronization Channel Number.
struct Gscn {
  std::uint32_t value = 0;
  constexpr auto operator<=>(const Gscn&) const = default;
};

enum class Duplex { TDD, FDD, SDL };
enum class Link { UL, DL };
enum class BlockPattern { CaseA, CaseB, CaseC };

/// first - <step> - last, inclusive.
struct RasterRange {
  std::uint32_t first = 0;
  std::uint32_t step = 1;
  std::uint32_t last = 0;

  bool contains(std::uint32_t n) const {
    return n >= first && n <= last && (n - first) % step == 0;
  }
  std::size_t size() const { return (last - first) / step + 1; }
  bool operator==(const RasterRange&) const = default;
};

/// One row of the per-band channel raster table.
struct ChannelRaster {
  int delta_f_raster_khz = 0;
  std::optional<RasterRange> ul;
  std::optional<RasterRange> dl;
};

/// One row of the per-band synchronization raster table.
struct SyncRasterEntry {
  int scs_khz = 0;
  BlockPattern block_pattern = BlockPattern::CaseA;
  RasterRange gscn_range;
};

struct BandPlan {
  std::string band_id;
  Duplex duplex = Duplex::FDD;
  /// Usually one row; some bands list one row per raster granularity.
  std::vector<ChannelRaster> channel_rasters;
  std::vector<SyncRasterEntry> sync_entries;

  /// Throws ValidationError naming the broken invariant.
  void validate() const;

  const ChannelRaster& primary_raster() const { return channel_rasters.front(); }
  std::optional<RasterRange> raster(Link link) const;
};

/// True iff `arfcn` lies on the band's raster for `link`.
bool validate_channel(const BandPlan& band, Arfcn arfcn, Link link);

/// Band plans loaded from a data file, looked up by band id.
class BandTable {
 public:
  BandTable() = default;
  explicit BandTable(std::vector<BandPlan> bands);

  static BandTable load(const std::string& path);

  const BandPlan& find(std::string_view band_id) const;
  const BandPlan* try_find(std::string_view band_id) const;
  const std::vector<BandPlan>& bands() const { return bands_; }

 private:
  std::vector<BandPlan> bands_;
};

/// The n46 plan, built in code; matches the bundled data file row.
BandPlan n46_band_plan();

std::string_view to_string(Link link);
std::string_view to_string(Duplex duplex);
Link parse_link(std::string_view text);

}  // namespace nrusim::spectrum
