/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace nrusim {

class Ipv4Address {
 public:
  constexpr Ipv4Address() = default;
  constexpr explicit Ipv4Address(std::uint32_t host_order) : value_(host_order) {}
  constexpr Ipv4Address(std::uint8_t a, std::uint8_t b, std::uint8_t c, std::uint8_t d)
      : value_((std::uint32_t{a} << 24) | (std::uint32_t{b} << 16) | (std::uint32_t{c} << 8) | d) {}

  /// Dotted quad; throws DomainError when malformed.
  static Ipv4Address parse(std::string_view text);

  constexpr std::uint32_t value() const { return value_; }
  std::string to_string() const;

  constexpr auto operator<=>(const Ipv4Address&) const = default;

 private:
  std::uint32_t value_ = 0;
};

/// IPv4 subnet in CIDR notation.
class Cidr {
 public:
  constexpr Cidr() = default;
  /// Host bits of `network` must be zero.
  Cidr(Ipv4Address network, int prefix);

  static Cidr parse(std::string_view text);

  constexpr Ipv4Address network() const { return network_; }
  constexpr int prefix() const { return prefix_; }
  std::uint32_t mask() const;
  bool contains(Ipv4Address a) const;
  /// Usable host addresses (network and broadcast excluded); prefixes > 30
  /// have none.
  std::uint32_t host_count() const;
  Ipv4Address first_host() const;
  Ipv4Address last_host() const;
  std::string to_string() const;

  constexpr auto operator<=>(const Cidr&) const = default;

 private:
  Ipv4Address network_;
  int prefix_ = 32;
};

}  // namespace nrusim
