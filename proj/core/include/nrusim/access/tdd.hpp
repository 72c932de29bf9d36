/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <string_view>

namespace nrusim::access {

enum class SlotKind { DL, UL, GUARD };

/// Per-period slot split. Slots are laid out DL first, then guard, then UL.
struct TddConfig {
  int period = 10;
  int dl_slots = 7;
  int ul_slots = 2;

  void validate() const;
  int guard_slots() const { return period - dl_slots - ul_slots; }
  double dl_fraction() const { return static_cast<double>(dl_slots) / period; }
  double ul_fraction() const { return static_cast<double>(ul_slots) / period; }
  bool operator==(const TddConfig&) const = default;
};

SlotKind schedule_tdd(const TddConfig& cfg, std::int64_t slot_index);

/// First slot index >= `from` carrying `kind`.
std::int64_t next_slot_of(const TddConfig& cfg, SlotKind kind, std::int64_t from);

std::string_view to_string(SlotKind k);

}  // namespace nrusim::access
