/*
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <set>

#include "nrusim/common/error.hpp"
#include "nrusim/common/ipv4.hpp"

namespace nrusim::corenet {

class AllocationError : public Error {
 public:
  using Error::Error;
};

/// UE address pool. The first host address is the gateway; allocation hands
/// out the lowest free address above it.
class IpPool {
 public:
  /// Prefix must leave at least two host addresses (/30 or shorter).
  explicit IpPool(Cidr cidr);

  const Cidr& cidr() const { return cidr_; }
  Ipv4Address gateway() const { return gateway_; }

  /// Throws AllocationError when exhausted.
  Ipv4Address allocate();
  /// Returns false if `a` was not allocated.
  bool release(Ipv4Address a);
  bool is_allocated(Ipv4Address a) const { return allocated_.count(a.value()) != 0; }

  /// Host addresses minus the gateway.
  std::uint32_t capacity() const { return cidr_.host_count() - 1; }
  std::uint32_t allocated_count() const { return static_cast<std::uint32_t>(allocated_.size()); }
  std::uint32_t free_count() const { return capacity() - allocated_count(); }

 private:
  Cidr cidr_;
  Ipv4Address gateway_;
  std::set<std::uint32_t> allocated_;
};

}  // namespace nrusim::corenet
