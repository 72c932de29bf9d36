/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>

#include "nrusim/common/units.hpp"
#include "nrusim/rflink/hardware.hpp"

namespace nrusim::rflink {

inline constexpr double kDefaultViabilityThreshold = 0.001;

/// One complex sample per second per Hz of channel bandwidth.
SampleRate required_sampling_rate(Frequency bandwidth);

/// Fraction of the required stream the host cannot keep up with:
/// max(0, required - available) / required.
double sample_drop_fraction(const HostModel& host, SampleRate required);

/// A link whose drop fraction exceeds the threshold cannot hold radio
/// synchronisation for bulk data; short control exchanges still complete.
bool link_viable(double drop, double threshold = kDefaultViabilityThreshold);

/// Maximum transmission bandwidth configuration (resource blocks) for FR1.
/// nullopt for bandwidth/SCS pairs that are not defined.
std::optional<int> resource_blocks(Frequency bandwidth, int scs_khz);

/// Slot length for the numerology; 1 ms at 15 kHz, halving per doubling.
Micros slot_duration(int scs_khz);

/// Efficiency of the SDR sample stream at the given channel bandwidth:
/// 1 - k * (bandwidth / max_bandwidth)^2, clamped to [0, 1].
double sdr_streaming_efficiency(const SdrModel& sdr, Frequency bandwidth, double k);

}  // namespace nrusim::rflink
