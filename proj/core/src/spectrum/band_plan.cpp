/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/spectrum/band_plan.hpp"

#include <algorithm>

#include "../common/yaml_support.hpp"
#include "nrusim/common/error.hpp"

namespace nrusim::spectrum {
namespace {

void check_range(const RasterRange& r, const std::string& where) {
  if (r.step == 0) throw ValidationError(where, 0, "step must be positive");
  if (r.first > r.last) throw ValidationError(where, 0, "first must not exceed last");
  if ((r.last - r.first) % r.step != 0) {
    throw ValidationError(where, 0, "(last - first) not divisible by step");
  }
}

RasterRange parse_range(const YAML::Node& n, const std::string& path) {
  if (!n.IsSequence() || n.size() != 3) {
    throw ValidationError(path, detail::line_of(n), "expected [first, step, last]");
  }
  RasterRange r{detail::as<std::uint32_t>(n[0], path), detail::as<std::uint32_t>(n[1], path),
                detail::as<std::uint32_t>(n[2], path)};
  try {
    check_range(r, path);
  } catch (const ValidationError& e) {
    throw ValidationError(path, detail::line_of(n), e.what());
  }
  return r;
}

Duplex parse_duplex(const std::string& s, const YAML::Node& n, const std::string& path) {
  if (s == "TDD") return Duplex::TDD;
  if (s == "FDD") return Duplex::FDD;
  if (s == "SDL") return Duplex::SDL;
  throw ValidationError(path, detail::line_of(n), "unknown duplex mode '" + s + "'");
}

BlockPattern parse_pattern(const std::string& s, const YAML::Node& n, const std::string& path) {
  if (s == "A") return BlockPattern::CaseA;
  if (s == "B") return BlockPattern::CaseB;
  if (s == "C") return BlockPattern::CaseC;
  throw ValidationError(path, detail::line_of(n), "unknown SS block pattern '" + s + "'");
}

}  // namespace

std::optional<RasterRange> BandPlan::raster(Link link) const {
  if (channel_rasters.empty()) return std::nullopt;
  return link == Link::UL ? primary_raster().ul : primary_raster().dl;
}

void BandPlan::validate() const {
  const std::string where = "band " + band_id;
  if (band_id.empty()) throw ValidationError("band_id", 0, "empty band id");
  if (channel_rasters.empty()) throw ValidationError(where, 0, "no channel raster");
  for (const auto& row : channel_rasters) {
    if (row.delta_f_raster_khz <= 0) throw ValidationError(where, 0, "delta_f_raster must be positive");
    if (!row.dl && !row.ul) throw ValidationError(where, 0, "raster row without UL or DL range");
    if (row.ul) check_range(*row.ul, where + " UL");
    if (row.dl) check_range(*row.dl, where + " DL");
    if (duplex == Duplex::TDD && row.ul != row.dl) {
      throw ValidationError(where, 0, "TDD band must use identical UL and DL rasters");
    }
    if (duplex == Duplex::SDL && row.ul) throw ValidationError(where, 0, "SDL band has an UL raster");
  }
  for (const auto& e : sync_entries) {
    if (e.scs_khz <= 0) throw ValidationError(where, 0, "SS block SCS must be positive");
    check_range(e.gscn_range, where + " GSCN");
  }
}

bool validate_channel(const BandPlan& band, Arfcn arfcn, Link link) {
  return std::any_of(band.channel_rasters.begin(), band.channel_rasters.end(), [&](const auto& row) {
    const auto& r = link == Link::UL ? row.ul : row.dl;
    return r && r->contains(arfcn.value);
  });
}

BandTable::BandTable(std::vector<BandPlan> bands) : bands_(std::move(bands)) {
  for (std::size_t i = 0; i < bands_.size(); ++i) {
    bands_[i].validate();
    for (std::size_t j = 0; j < i; ++j) {
      if (bands_[j].band_id == bands_[i].band_id) {
        throw ValidationError("band " + bands_[i].band_id, 0, "duplicate band id");
      }
    }
  }
}

BandTable BandTable::load(const std::string& path) {
  const YAML::Node root = detail::load_yaml_file(path);
  const auto version = detail::get<int>(root, "schema_version", path);
  if (version != 1) throw ValidationError(path + ".schema_version", detail::line_of(root), "unsupported version");
  std::vector<BandPlan> bands;
  const YAML::Node list = detail::require(root, "bands", path);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const YAML::Node b = list[i];
    const std::string p = path + ".bands[" + std::to_string(i) + "]";
    BandPlan plan;
    plan.band_id = detail::get<std::string>(b, "id", p);
    plan.duplex = parse_duplex(detail::get<std::string>(b, "duplex", p), b, p + ".duplex");
    const YAML::Node rows = detail::require(b, "channel_raster", p);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const std::string rp = p + ".channel_raster[" + std::to_string(k) + "]";
      ChannelRaster row;
      row.delta_f_raster_khz = detail::get<int>(rows[k], "delta_f_raster_khz", rp);
      if (rows[k]["ul"]) row.ul = parse_range(rows[k]["ul"], rp + ".ul");
      if (rows[k]["dl"]) row.dl = parse_range(rows[k]["dl"], rp + ".dl");
      plan.channel_rasters.push_back(row);
    }
    if (const YAML::Node sync = b["sync_raster"]) {
      for (std::size_t k = 0; k < sync.size(); ++k) {
        const std::string sp = p + ".sync_raster[" + std::to_string(k) + "]";
        SyncRasterEntry e;
        e.scs_khz = detail::get<int>(sync[k], "scs_khz", sp);
        e.block_pattern = parse_pattern(detail::get<std::string>(sync[k], "pattern", sp), sync[k], sp);
        e.gscn_range = parse_range(detail::require(sync[k], "gscn", sp), sp + ".gscn");
        plan.sync_entries.push_back(e);
      }
    }
    try {
      plan.validate();
    } catch (const ValidationError& e) {
      throw ValidationError(p, detail::line_of(b), e.what());
    }
    bands.push_back(std::move(plan));
  }
  return BandTable(std::move(bands));
}

const BandPlan* BandTable::try_find(std::string_view band_id) const {
  for (const auto& b : bands_) {
    if (b.band_id == band_id) return &b;
  }
  return nullptr;
}

const BandPlan& BandTable::find(std::string_view band_id) const {
  if (const auto* b = try_find(band_id)) return *b;
  throw ConfigError("unknown band '" + std::string(band_id) + "'");
}

BandPlan n46_band_plan() {
  BandPlan p;
  p.band_id = "n46";
  p.duplex = Duplex::TDD;
  const RasterRange r{743333, 1, 795000};
  p.channel_rasters.push_back(ChannelRaster{15, r, r});
  p.sync_entries.push_back(SyncRasterEntry{30, BlockPattern::CaseC, RasterRange{8993, 1, 9530}});
  return p;
}

std::string_view to_string(Link link) { return link == Link::UL ? "UL" : "DL"; }

std::string_view to_string(Duplex duplex) {
  switch (duplex) {
    case Duplex::TDD: return "TDD";
    case Duplex::FDD: return "FDD";
    case Duplex::SDL: return "SDL";
  }
  return "?";
}

Link parse_link(std::string_view text) {
  if (text == "UL" || text == "ul") return Link::UL;
  if (text == "DL" || text == "dl") return Link::DL;
  throw ConfigError("link must be UL or DL, got '" + std::string(text) + "'");
}

}  // namespace nrusim::spectrum
