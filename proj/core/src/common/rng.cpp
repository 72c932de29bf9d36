/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/common/rng.hpp"

#include <cmath>
#include <limits>

namespace nrusim {

std::uint64_t Rng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
  if (hi <= lo) return lo;
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return next();
  const std::uint64_t range = span + 1;
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return lo + x % range;
}

double Rng::exponential(double mean) {
  if (mean <= 0.0) return 0.0;
  return -mean * std::log1p(-uniform01());
}

}  // namespace nrusim
