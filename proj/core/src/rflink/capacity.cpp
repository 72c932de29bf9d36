/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/rflink/capacity.hpp"

#include <algorithm>
#include <array>

#include "nrusim/common/error.hpp"

namespace nrusim::rflink {
namespace {

struct RbRow {
  int bandwidth_mhz;
  int rb15;
  int rb30;
  int rb60;
};

// FR1 maximum transmission bandwidth configuration; 0 = not defined.
constexpr std::array kRbTable{
    RbRow{5, 25, 11, 0},     RbRow{10, 52, 24, 11},   RbRow{15, 79, 38, 18},
    RbRow{20, 106, 51, 24},  RbRow{25, 133, 65, 31},  RbRow{30, 160, 78, 38},
    RbRow{40, 216, 106, 51}, RbRow{50, 270, 133, 65}, RbRow{60, 0, 162, 79},
    RbRow{70, 0, 189, 93},   RbRow{80, 0, 217, 107},  RbRow{90, 0, 245, 121},
    RbRow{100, 0, 273, 135},
};

}  // namespace

SampleRate required_sampling_rate(Frequency bandwidth) {
  if (bandwidth.khz() <= 0) throw DomainError("bandwidth must be positive");
  return SampleRate::from_sps(bandwidth.khz() * 1000);
}

double sample_drop_fraction(const HostModel& host, SampleRate required) {
  if (required.sps() <= 0) throw DomainError("required sample rate must be positive");
  const std::int64_t deficit = required.sps() - host.available().sps();
  if (deficit <= 0) return 0.0;
  return std::min(1.0, static_cast<double>(deficit) / static_cast<double>(required.sps()));
}

bool link_viable(double drop, double threshold) { return !(drop > threshold); }

std::optional<int> resource_blocks(Frequency bandwidth, int scs_khz) {
  if (bandwidth.khz() % 1000 != 0) return std::nullopt;
  const auto mhz = static_cast<int>(bandwidth.khz() / 1000);
  for (const auto& row : kRbTable) {
    if (row.bandwidth_mhz != mhz) continue;
    const int rb = scs_khz == 15 ? row.rb15 : scs_khz == 30 ? row.rb30 : scs_khz == 60 ? row.rb60 : 0;
    if (rb == 0) return std::nullopt;
    return rb;
  }
  return std::nullopt;
}

Micros slot_duration(int scs_khz) {
  if (scs_khz != 15 && scs_khz != 30 && scs_khz != 60) throw DomainError("unsupported subcarrier spacing");
  return Micros{1000 * 15 / scs_khz};
}

double sdr_streaming_efficiency(const SdrModel& sdr, Frequency bandwidth, double k) {
  const double ratio = static_cast<double>(bandwidth.khz()) / static_cast<double>(sdr.max_bandwidth.khz());
  return std::clamp(1.0 - k * ratio * ratio, 0.0, 1.0);
}

}  // namespace nrusim::rflink
