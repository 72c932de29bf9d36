/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include <cmath>

#include <gtest/gtest.h>

#include "nrusim/common/error.hpp"
#include "nrusim/common/rng.hpp"
#include "nrusim/rflink/capacity.hpp"
#include "nrusim/rflink/link_budget.hpp"
#include "test_support.hpp"

using namespace nrusim;
using namespace nrusim::rflink;

namespace {

HostModel host(double capacity_msps, double load_msps) {
  return HostModel{"h", SampleRate::from_sps(std::llround(capacity_msps * 1e6)),
                   SampleRate::from_sps(std::llround(load_msps * 1e6))};
}

SampleRate msps(double v) { return SampleRate::from_sps(std::llround(v * 1e6)); }

}  // namespace

TEST(Capacity, RequiredSamplingRate) {
  EXPECT_EQ(required_sampling_rate(Frequency::from_mhz(std::int64_t{40})).sps(), 40'000'000);
  EXPECT_EQ(required_sampling_rate(Frequency::from_mhz(std::int64_t{20})).sps(), 20'000'000);
  EXPECT_EQ(required_sampling_rate(Frequency::from_khz(1)).sps(), 1'000);
  EXPECT_THROW(required_sampling_rate(Frequency::from_khz(0)), DomainError);
}

TEST(Capacity, DropFraction) {
  EXPECT_EQ(sample_drop_fraction(host(40, 0), msps(40)), 0.0);
  EXPECT_EQ(sample_drop_fraction(host(100, 0), msps(40)), 0.0);
  const auto nuc = test::env().hardware.host("intel-nuc-i5-5300u").instantiate(true);
  EXPECT_EQ(sample_drop_fraction(nuc, msps(40)), 0.015);
  const auto nuc_alone = test::env().hardware.host("intel-nuc-i5-5300u").instantiate(false);
  EXPECT_EQ(sample_drop_fraction(nuc_alone, msps(40)), 0.0);
}

TEST(Capacity, Viability) {
  EXPECT_TRUE(link_viable(0.0));
  EXPECT_FALSE(link_viable(0.015));
  EXPECT_TRUE(link_viable(0.0005));
  EXPECT_TRUE(link_viable(0.001));
}

TEST(Capacity, ResourceBlocksAndSlots) {
  EXPECT_EQ(resource_blocks(Frequency::from_mhz(std::int64_t{40}), 30), 106);
  EXPECT_EQ(resource_blocks(Frequency::from_mhz(std::int64_t{20}), 30), 51);
  EXPECT_EQ(slot_duration(30), Micros{500});
  EXPECT_EQ(slot_duration(15), Micros{1000});
}

TEST(Capacity, SdrEfficiencyOrdersBySdrBandwidth) {
  const auto& hw = test::env().hardware;
  const auto bw = Frequency::from_mhz(std::int64_t{40});
  const double b210 = sdr_streaming_efficiency(hw.sdr("usrp-b210"), bw, 0.343);
  const double n300 = sdr_streaming_efficiency(hw.sdr("usrp-n300"), bw, 0.343);
  EXPECT_GT(n300, b210);
  EXPECT_NEAR(b210, 0.825, 0.001);
  EXPECT_NEAR(n300, 0.945, 0.001);
}

TEST(CapacityProperty, DropMonotone) {
  Rng rng(42);
  for (int i = 0; i < 5000; ++i) {
    const double cap = rng.uniform(1, 200);
    const double load = rng.uniform(0, 5);
    const double req = rng.uniform(1, 100);
    const double d = sample_drop_fraction(host(cap, load), msps(req));
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 1.0);
    EXPECT_LE(sample_drop_fraction(host(cap + 1, load), msps(req)), d);
    EXPECT_GE(sample_drop_fraction(host(cap, load), msps(req + 1)), d);
    EXPECT_GE(sample_drop_fraction(host(cap, load + 0.5), msps(req)), d);
    if (!link_viable(d)) EXPECT_FALSE(link_viable(sample_drop_fraction(host(cap, load + 0.5), msps(req))));
  }
}

TEST(LinkBudget, TableThreeTargets) {
  const auto carrier = Frequency::from_mhz(std::int64_t{5250});
  const LinkMedium a{OverAir{2.0}};
  const LinkMedium b{OverAir{3.0}};
  const LinkMedium c{Cable{50.0, 30.0}};
  EXPECT_NEAR(compute_rsrp(-35.13, 12, a, carrier), -100.0, 0.05);
  EXPECT_NEAR(compute_rsrp(-82.61, 1, b, carrier), -140.0, 0.05);
  EXPECT_NEAR(compute_rsrp(-88.75, 1, c, carrier), -120.0, 0.05);
  EXPECT_NEAR(compute_rsrp(-54.75, 10, c, carrier), -95.0, 0.05);
}

TEST(LinkBudget, FreeSpaceReference) {
  EXPECT_NEAR(reference_path_loss_db(Frequency::from_mhz(std::int64_t{5250})), 46.85, 0.01);
  EXPECT_NEAR(medium_loss_db(LinkMedium{Cable{100.0, 10.0}}, Frequency::from_mhz(std::int64_t{5250})), 10.5, 1e-9);
}

TEST(LinkBudgetProperty, MonotoneInEachLoss) {
  Rng rng(7);
  const auto carrier = Frequency::from_mhz(std::int64_t{5250});
  for (int i = 0; i < 2000; ++i) {
    const double tx = rng.uniform(-90, 20);
    const double att = rng.uniform(0, 30);
    const double d = rng.uniform(0.1, 100);
    const double len = rng.uniform(1, 500);
    const double pad = rng.uniform(0, 40);
    const double base_air = compute_rsrp(tx, att, LinkMedium{OverAir{d}}, carrier);
    EXPECT_LT(compute_rsrp(tx, att + 1, LinkMedium{OverAir{d}}, carrier), base_air);
    EXPECT_LT(compute_rsrp(tx, att, LinkMedium{OverAir{d * 1.5}}, carrier), base_air);
    const double base_cable = compute_rsrp(tx, att, LinkMedium{Cable{len, pad}}, carrier);
    EXPECT_LT(compute_rsrp(tx, att, LinkMedium{Cable{len + 10, pad}}, carrier), base_cable);
    EXPECT_LT(compute_rsrp(tx, att, LinkMedium{Cable{len, pad + 1}}, carrier), base_cable);
  }
}

TEST(LinkBudget, InvalidMedium) {
  EXPECT_THROW(LinkMedium{OverAir{0.0}}.validate(), DomainError);
  EXPECT_THROW((LinkMedium{Cable{-1.0, 0.0}}.validate()), DomainError);
  EXPECT_THROW(compute_rsrp(0, -1, LinkMedium{OverAir{1.0}}, Frequency::from_mhz(std::int64_t{5250})), DomainError);
}

TEST(Hardware, CatalogLookups) {
  const auto& hw = test::env().hardware;
  EXPECT_EQ(hw.sdr("usrp-b210").max_bandwidth.khz(), 56000);
  EXPECT_EQ(hw.host("dell-precision-5820-i9").capacity.sps(), 200'000'000);
  EXPECT_THROW(hw.sdr("usrp-x999"), ConfigError);
}
