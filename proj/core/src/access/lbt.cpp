/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/access/lbt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "nrusim/common/error.hpp"

namespace nrusim::access {
namespace {

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

}  // namespace

void LbtConfig::validate() const {
  if (cca_duration.count() <= 0) throw ValidationError("lbt.cca_us", 0, "must be positive");
  if (cw_min > cw_max) throw ValidationError("lbt.cw_min", 0, "cw_min exceeds cw_max");
  if (backoff_slot.count() <= 0) throw ValidationError("lbt.backoff_slot_us", 0, "must be positive");
  if (!std::isfinite(cca_threshold_dbm)) throw ValidationError("lbt.cca_threshold_dbm", 0, "must be finite");
}

ChannelOccupancy::ChannelOccupancy(std::vector<Burst> bursts) {
  for (auto& b : bursts) add(b);
}

void ChannelOccupancy::add(Burst b) {
  if (!(b.start < b.end)) throw ValidationError("occupancy", 0, "burst start must precede its end");
  if (!std::isfinite(b.power_dbm)) throw ValidationError("occupancy", 0, "burst power must be finite");
  bursts_.push_back(b);
}

double ChannelOccupancy::energy_dbm_at(Micros t) const {
  double mw = 0.0;
  for (const auto& b : bursts_) {
    if (b.start <= t && t < b.end) mw += dbm_to_mw(b.power_dbm);
  }
  return mw > 0.0 ? 10.0 * std::log10(mw) : -std::numeric_limits<double>::infinity();
}

std::vector<BusyInterval> ChannelOccupancy::busy_intervals(double threshold_dbm) const {
  struct Edge {
    Micros t;
    bool open;
    double mw;
  };
  std::vector<Edge> edges;
  edges.reserve(bursts_.size() * 2);
  for (const auto& b : bursts_) {
    const double mw = dbm_to_mw(b.power_dbm);
    edges.push_back(Edge{b.start, true, mw});
    edges.push_back(Edge{b.end, false, mw});
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.t < b.t; });

  std::vector<BusyInterval> out;
  std::multiset<double> active;
  std::size_t i = 0;
  while (i < edges.size()) {
    const Micros t = edges[i].t;
    for (; i < edges.size() && edges[i].t == t; ++i) {
      if (edges[i].open) {
        active.insert(edges[i].mw);
      } else {
        active.erase(active.find(edges[i].mw));
      }
    }
    if (active.empty()) continue;
    // Fresh sum per segment; a running sum would drift after large bursts end.
    double mw = 0.0;
    for (double p : active) mw += p;
    if (10.0 * std::log10(mw) < threshold_dbm - 1e-9) continue;
    const Micros next = edges[i].t;
    if (!out.empty() && out.back().end == t) {
      out.back().end = next;
    } else {
      out.push_back(BusyInterval{t, next});
    }
  }
  return out;
}

LbtGate::LbtGate(const ChannelOccupancy& occupancy, LbtConfig cfg)
    : cfg_(cfg), busy_(occupancy.busy_intervals(cfg.cca_threshold_dbm)), cw_(cfg.cw_min) {
  cfg_.validate();
}

const BusyInterval* LbtGate::first_overlap(Micros lo, Micros hi) const {
  // Busy [s, e) meets the closed window [lo, hi] when s <= hi and e > lo.
  auto it = std::upper_bound(busy_.begin(), busy_.end(), lo,
                             [](Micros v, const BusyInterval& b) { return v < b.end; });
  if (it != busy_.end() && it->start <= hi) return &*it;
  return nullptr;
}

LbtDecision LbtGate::request(Micros now, Micros deadline, Rng& rng) {
  LbtDecision d;
  Micros t = now;
  while (t + cfg_.cca_duration <= deadline) {
    const BusyInterval* hit = first_overlap(t, t + cfg_.cca_duration);
    if (hit == nullptr) {
      d.granted = true;
      d.at = t + cfg_.cca_duration;
      cw_ = cfg_.cw_min;
      return d;
    }
    ++d.busy_observations;
    const auto backoff = static_cast<std::int64_t>(rng.uniform_int(0, cw_));
    cw_ = std::min<std::uint32_t>(cw_ * 2 + 1, cfg_.cw_max);
    t = hit->end + cfg_.backoff_slot * backoff;
  }
  return d;
}

LbtDecision lbt_gate(const ChannelOccupancy& occupancy, const LbtConfig& cfg, Micros now, Micros deadline, Rng& rng) {
  LbtGate gate(occupancy, cfg);
  return gate.request(now, deadline, rng);
}

}  // namespace nrusim::access
