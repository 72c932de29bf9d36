/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nrusim/corenet/ip_pool.hpp"

namespace nrusim::corenet {

IpPool::IpPool(Cidr cidr) : cidr_(cidr) {
  if (cidr.host_count() < 2) {
    throw ConfigError("pool " + cidr.to_string() + " leaves no address besides the gateway");
  }
  gateway_ = cidr.first_host();
}

Ipv4Address IpPool::allocate() {
  const std::uint32_t lo = gateway_.value() + 1;
  const std::uint32_t hi = cidr_.last_host().value();
  std::uint32_t candidate = lo;
  for (auto it = allocated_.lower_bound(lo); it != allocated_.end() && *it == candidate; ++it) {
    ++candidate;
  }
  if (candidate > hi) throw AllocationError("address pool " + cidr_.to_string() + " exhausted");
  allocated_.insert(candidate);
  return Ipv4Address(candidate);
}

bool IpPool::release(Ipv4Address a) { return allocated_.erase(a.value()) != 0; }

}  // namespace nrusim::corenet
