/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include <set>

#include <gtest/gtest.h>

#include "nrusim/common/error.hpp"
#include "nrusim/common/rng.hpp"
#include "nrusim/corenet/core_network.hpp"
#include "nrusim/corenet/ip_pool.hpp"

using namespace nrusim;
using namespace nrusim::corenet;

namespace {

const std::string kImsi1 = "208950000000031";
const std::string kImsi2 = "208950000000032";

SubscriberStore store(std::initializer_list<std::string> imsis) {
  SubscriberStore s;
  for (const auto& i : imsis) s.add({i, true});
  return s;
}

CoreNetwork attached_core(std::initializer_list<std::string> imsis) {
  CoreNetwork core(CoreConfig{}, store(imsis), 1);
  for (const auto& i : imsis) EXPECT_TRUE(core.register_ue(i).accepted);
  return core;
}

}  // namespace

TEST(Registration, Outcomes) {
  SubscriberStore s = store({kImsi1});
  s.add({kImsi2, false});
  CoreNetwork core(CoreConfig{}, s);
  EXPECT_TRUE(core.register_ue(kImsi1).accepted);
  const auto unknown = core.register_ue("208950000000099");
  EXPECT_FALSE(unknown.accepted);
  EXPECT_EQ(unknown.reason, RejectReason::UnknownSubscriber);
  EXPECT_EQ(core.register_ue("20895000000003").reason, RejectReason::Malformed);
  EXPECT_EQ(core.register_ue("20895000000003x").reason, RejectReason::Malformed);
  EXPECT_EQ(core.register_ue(kImsi2).reason, RejectReason::Disabled);
}

TEST(Registration, Deterministic) {
  CoreNetwork a(CoreConfig{}, store({kImsi1}));
  CoreNetwork b(CoreConfig{}, store({kImsi1}));
  for (const auto* imsi : {"208950000000031", "208950000000099", "1234"}) {
    const auto ra = a.register_ue(imsi);
    const auto rb = b.register_ue(imsi);
    EXPECT_EQ(ra.accepted, rb.accepted);
    EXPECT_EQ(ra.reason, rb.reason);
  }
}

TEST(Sessions, FirstAllocationsFollowFigures) {
  auto core = attached_core({kImsi1, kImsi2});
  const auto& s1 = core.establish_pdu_session(kImsi1);
  EXPECT_EQ(s1.ip.to_string(), "12.1.1.2");
  EXPECT_EQ(s1.interface_name, "oaitun_ue1");
  const auto& s2 = core.establish_pdu_session(kImsi2);
  EXPECT_EQ(s2.ip.to_string(), "12.1.1.3");
  core.check_invariants();
}

TEST(Sessions, RequiresRegistration) {
  CoreNetwork core(CoreConfig{}, store({kImsi1}));
  EXPECT_THROW(core.establish_pdu_session(kImsi1), StateError);
}

TEST(Sessions, PoolExhaustion) {
  CoreConfig cfg;
  cfg.ue_pool = Cidr::parse("12.1.1.0/30");
  CoreNetwork core(cfg, store({kImsi1, kImsi2}));
  ASSERT_TRUE(core.register_ue(kImsi1).accepted);
  ASSERT_TRUE(core.register_ue(kImsi2).accepted);
  EXPECT_EQ(core.establish_pdu_session(kImsi1).ip.to_string(), "12.1.1.2");
  EXPECT_THROW(core.establish_pdu_session(kImsi2), AllocationError);
  core.check_invariants();
}

TEST(Sessions, ReleaseReusesLowestFree) {
  auto core = attached_core({kImsi1, kImsi2});
  const auto id1 = core.establish_pdu_session(kImsi1).id;
  core.establish_pdu_session(kImsi2);
  EXPECT_EQ(core.release_session(id1), ReleaseOutcome::Released);
  EXPECT_EQ(core.release_session(id1), ReleaseOutcome::AlreadyReleased);
  EXPECT_EQ(core.establish_pdu_session(kImsi1).ip.to_string(), "12.1.1.2");
  core.check_invariants();
}

TEST(Sessions, PoolReconfiguration) {
  auto core = attached_core({kImsi1});
  const auto id = core.establish_pdu_session(kImsi1).id;
  EXPECT_THROW(core.reconfigure_pool(Cidr::parse("10.1.1.0/24")), StateError);
  core.release_session(id);
  EXPECT_NO_THROW(core.reconfigure_pool(Cidr::parse("12.1.1.0/24")));
  core.reconfigure_pool(Cidr::parse("10.1.1.0/24"));
  const auto& s = core.establish_pdu_session(kImsi1);
  EXPECT_TRUE(Cidr::parse("10.1.1.0/24").contains(s.ip));
  EXPECT_EQ(s.ip.to_string(), "10.1.1.2");
}

TEST(Sessions, LookupByIpAndTeid) {
  auto core = attached_core({kImsi1});
  const auto& s = core.establish_pdu_session(kImsi1);
  EXPECT_EQ(core.session_for_ip(s.ip)->id, s.id);
  EXPECT_EQ(core.session_for_uplink_teid(s.teid_uplink)->id, s.id);
  EXPECT_EQ(core.session_for_uplink_teid(s.teid_downlink), nullptr);
}

TEST(Config, Validation) {
  CoreConfig cfg;
  cfg.upf_address = Ipv4Address::parse("10.0.0.1");
  EXPECT_THROW(cfg.validate(), ConfigError);
  EXPECT_THROW(IpPool(Cidr::parse("12.1.1.0/31")), ConfigError);
}

TEST(IpPool, AccountingAndGateway) {
  IpPool p(Cidr::parse("12.1.1.0/24"));
  EXPECT_EQ(p.gateway().to_string(), "12.1.1.1");
  EXPECT_EQ(p.capacity(), 253u);
  const auto a = p.allocate();
  EXPECT_TRUE(p.is_allocated(a));
  EXPECT_TRUE(p.release(a));
  EXPECT_FALSE(p.release(a));
  EXPECT_FALSE(p.release(p.gateway()));
}

// Random establish/release sequences keep IPs and TEIDs unique and the pool
// accounting exact.
TEST(CoreProperty, UniquenessAndAccounting) {
  Rng rng(2024);
  for (int round = 0; round < 50; ++round) {
    SubscriberStore s;
    std::vector<std::string> imsis;
    for (int i = 0; i < 12; ++i) {
      imsis.push_back("0010100000" + std::to_string(10000 + i));
      s.add({imsis.back(), true});
    }
    CoreConfig cfg;
    cfg.ue_pool = Cidr::parse("12.1.1.0/28");
    CoreNetwork core(cfg, s, rng.next());
    for (const auto& i : imsis) ASSERT_TRUE(core.register_ue(i).accepted);
    std::vector<SessionId> ids;
    for (int step = 0; step < 200; ++step) {
      if (ids.empty() || rng.uniform01() < 0.6) {
        try {
          ids.push_back(core.establish_pdu_session(imsis[rng.uniform_int(0, imsis.size() - 1)]).id);
        } catch (const AllocationError&) {
        }
      } else {
        const auto k = rng.uniform_int(0, ids.size() - 1);
        core.release_session(ids[k]);
        ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(k));
      }
      ASSERT_NO_THROW(core.check_invariants());
      const auto active = core.active_sessions();
      std::set<std::uint32_t> ips;
      std::set<std::uint32_t> teids;
      for (const auto* a : active) {
        ASSERT_TRUE(ips.insert(a->ip.value()).second);
        ASSERT_TRUE(teids.insert(a->teid_uplink).second);
        ASSERT_TRUE(teids.insert(a->teid_downlink).second);
      }
      ASSERT_EQ(core.pool().allocated_count() + core.pool().free_count(), core.pool().cidr().host_count() - 1);
    }
  }
}
