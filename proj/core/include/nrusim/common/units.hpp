/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace nrusim {

/// Simulation time and durations. One tick is one microsecond.
using Micros = std::chrono::microseconds;

/// Radio frequency held as integer kHz so raster arithmetic stays exact.
class Frequency {
 public:
  constexpr Frequency() = default;

  static constexpr Frequency from_khz(std::int64_t khz) { return Frequency(khz); }
  static constexpr Frequency from_mhz(std::int64_t mhz) { return Frequency(mhz * 1000); }
  /// Rounds to the nearest kHz.
  static Frequency from_mhz(double mhz);
  /// Parses a decimal MHz literal ("5250.007") exactly; more than three
  /// fractional digits must be zeros.
  static Frequency parse_mhz(std::string_view text);

  constexpr std::int64_t khz() const { return khz_; }
  constexpr double mhz() const { return static_cast<double>(khz_) / 1000.0; }
  /// "5149.995"; always three decimals.
  std::string to_mhz_string() const;

  constexpr auto operator<=>(const Frequency&) const = default;
  constexpr Frequency operator+(Frequency o) const { return Frequency(khz_ + o.khz_); }
  constexpr Frequency operator-(Frequency o) const { return Frequency(khz_ - o.khz_); }

 private:
  constexpr explicit Frequency(std::int64_t khz) : khz_(khz) {}
  std::int64_t khz_ = 0;
};

/// Complex sample stream rate, integer samples per second.
class SampleRate {
 public:
  constexpr SampleRate() = default;
  static constexpr SampleRate from_sps(std::int64_t sps) { return SampleRate(sps); }
  /// Parses a decimal MSPS literal ("0.6") exactly to samples/s.
  static SampleRate parse_msps(std::string_view text);

  constexpr std::int64_t sps() const { return sps_; }
  constexpr double msps() const { return static_cast<double>(sps_) / 1e6; }

  constexpr auto operator<=>(const SampleRate&) const = default;
  constexpr SampleRate operator+(SampleRate o) const { return SampleRate(sps_ + o.sps_); }
  constexpr SampleRate operator-(SampleRate o) const { return SampleRate(sps_ - o.sps_); }

 private:
  constexpr explicit SampleRate(std::int64_t sps) : sps_(sps) {}
  std::int64_t sps_ = 0;
};

/// Parses a non-negative decimal literal into an integer scaled by 10^digits.
/// Throws DomainError on malformed text or precision loss.
std::int64_t parse_scaled_decimal(std::string_view text, int digits);

inline double to_ms(Micros d) { return static_cast<double>(d.count()) / 1000.0; }

}  // namespace nrusim
