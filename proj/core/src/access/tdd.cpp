/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/access/tdd.hpp"

#include <string>

#include "nrusim/common/error.hpp"

namespace nrusim::access {

void TddConfig::validate() const {
  if (period <= 0) throw ValidationError("tdd.period", 0, "must be positive");
  if (dl_slots <= 0) throw ValidationError("tdd.dl_slots", 0, "must be positive");
  if (ul_slots <= 0) throw ValidationError("tdd.ul_slots", 0, "must be positive");
  if (dl_slots + ul_slots > period) {
    throw ValidationError("tdd", 0,
                          "dl_slots + ul_slots (" + std::to_string(dl_slots + ul_slots) + ") exceeds period " +
                              std::to_string(period));
  }
}

SlotKind schedule_tdd(const TddConfig& cfg, std::int64_t slot_index) {
  std::int64_t k = slot_index % cfg.period;
  if (k < 0) k += cfg.period;
  if (k < cfg.dl_slots) return SlotKind::DL;
  if (k < cfg.period - cfg.ul_slots) return SlotKind::GUARD;
  return SlotKind::UL;
}

std::int64_t next_slot_of(const TddConfig& cfg, SlotKind kind, std::int64_t from) {
  for (std::int64_t s = from; s < from + cfg.period; ++s) {
    if (schedule_tdd(cfg, s) == kind) return s;
  }
  throw DomainError("TDD pattern has no slot of kind " + std::string(to_string(kind)));
}

std::string_view to_string(SlotKind k) {
  switch (k) {
    case SlotKind::DL: return "DL";
    case SlotKind::UL: return "UL";
    case SlotKind::GUARD: return "GUARD";
  }
  return "?";
}

}  // namespace nrusim::access
