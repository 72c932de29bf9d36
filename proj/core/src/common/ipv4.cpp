/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/common/ipv4.hpp"

#include <charconv>

#include "nrusim/common/error.hpp"

namespace nrusim {

Ipv4Address Ipv4Address::parse(std::string_view text) {
  std::uint32_t value = 0;
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int octet = 0; octet < 4; ++octet) {
    unsigned part = 0;
    auto [next, ec] = std::from_chars(p, end, part);
    if (ec != std::errc{} || next == p || part > 255) {
      throw DomainError("malformed IPv4 address '" + std::string(text) + "'");
    }
    value = (value << 8) | part;
    p = next;
    if (octet < 3) {
      if (p == end || *p != '.') throw DomainError("malformed IPv4 address '" + std::string(text) + "'");
      ++p;
    }
  }
  if (p != end) throw DomainError("malformed IPv4 address '" + std::string(text) + "'");
  return Ipv4Address(value);
}

std::string Ipv4Address::to_string() const {
  return std::to_string(value_ >> 24) + '.' + std::to_string((value_ >> 16) & 0xFF) + '.' +
         std::to_string((value_ >> 8) & 0xFF) + '.' + std::to_string(value_ & 0xFF);
}

Cidr::Cidr(Ipv4Address network, int prefix) : network_(network), prefix_(prefix) {
  if (prefix < 0 || prefix > 32) throw DomainError("prefix length out of range");
  if ((network.value() & ~mask()) != 0) {
    throw DomainError("host bits set in network address " + network.to_string() + "/" +
                      std::to_string(prefix));
  }
}

Cidr Cidr::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) throw DomainError("missing prefix in '" + std::string(text) + "'");
  int prefix = -1;
  const auto tail = text.substr(slash + 1);
  auto [p, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), prefix);
  if (ec != std::errc{} || p != tail.data() + tail.size()) {
    throw DomainError("malformed prefix in '" + std::string(text) + "'");
  }
  return Cidr(Ipv4Address::parse(text.substr(0, slash)), prefix);
}

std::uint32_t Cidr::mask() const {
  return prefix_ == 0 ? 0u : ~std::uint32_t{0} << (32 - prefix_);
}

bool Cidr::contains(Ipv4Address a) const { return (a.value() & mask()) == network_.value(); }

std::uint32_t Cidr::host_count() const {
  if (prefix_ > 30) return 0;
  return static_cast<std::uint32_t>((std::uint64_t{1} << (32 - prefix_)) - 2);
}

Ipv4Address Cidr::first_host() const { return Ipv4Address(network_.value() + 1); }

Ipv4Address Cidr::last_host() const { return Ipv4Address((network_.value() | ~mask()) - 1); }

std::string Cidr::to_string() const { return network_.to_string() + "/" + std::to_string(prefix_); }

}  // namespace nrusim
