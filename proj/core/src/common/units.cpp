/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/common/units.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "nrusim/common/error.hpp"

namespace nrusim {

std::int64_t parse_scaled_decimal(std::string_view text, int digits) {
  const std::string original(text);
  auto fail = [&](const char* why) {
    throw DomainError("cannot parse decimal '" + original + "': " + why);
  };
  if (text.empty()) fail("empty");
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::int64_t whole = 0;
  std::int64_t frac = 0;
  int frac_digits = 0;
  bool seen_dot = false;
  bool any_digit = false;
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max() / 10;
  for (char c : text) {
    if (c == '.') {
      if (seen_dot) fail("two decimal points");
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') fail("unexpected character");
    any_digit = true;
    const int d = c - '0';
    if (!seen_dot) {
      if (whole > kMax) fail("overflow");
      whole = whole * 10 + d;
    } else if (frac_digits < digits) {
      frac = frac * 10 + d;
      ++frac_digits;
    } else if (d != 0) {
      fail("more precision than supported");
    }
  }
  if (!any_digit) fail("no digits");
  for (; frac_digits < digits; ++frac_digits) frac *= 10;
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  if (whole > std::numeric_limits<std::int64_t>::max() / scale) fail("overflow");
  const std::int64_t v = whole * scale + frac;
  return negative ? -v : v;
}

Frequency Frequency::from_mhz(double mhz) {
  if (!std::isfinite(mhz)) throw DomainError("frequency must be finite");
  return Frequency(static_cast<std::int64_t>(std::llround(mhz * 1000.0)));
}

Frequency Frequency::parse_mhz(std::string_view text) {
  return Frequency(parse_scaled_decimal(text, 3));
}

std::string Frequency::to_mhz_string() const {
  const std::int64_t a = khz_ < 0 ? -khz_ : khz_;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%lld.%03lld", khz_ < 0 ? "-" : "",
                static_cast<long long>(a / 1000), static_cast<long long>(a % 1000));
  return buf;
}

SampleRate SampleRate::parse_msps(std::string_view text) {
  return SampleRate(parse_scaled_decimal(text, 6));
}

}  // namespace nrusim
