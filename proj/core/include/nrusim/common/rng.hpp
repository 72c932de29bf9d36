/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <random>

namespace nrusim {

/// Seeded generator used for every random draw in a simulation.
///
/// The engine is std::mt19937_64 (bit-specified by the standard); the
/// distributions are implemented here because the standard library ones are
/// not required to produce identical sequences across implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi], inclusive.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Exponential with the given mean; mean 0 yields 0.
  double exponential(double mean);

 private:
  std::mt19937_64 engine_;
};

/// Deterministic 64-bit mixer (splitmix64), for deriving sub-seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace nrusim
