/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include <gtest/gtest.h>

#include "nrusim/access/cell_search.hpp"
#include "nrusim/access/lbt.hpp"
#include "nrusim/access/tdd.hpp"
#include "nrusim/access/ue.hpp"
#include "nrusim/common/error.hpp"
#include "nrusim/common/rng.hpp"
#include "nrusim/spectrum/band_plan.hpp"

using namespace nrusim;
using namespace nrusim::access;

namespace {

const spectrum::BandPlan& n46() {
  static const auto b = spectrum::n46_band_plan();
  return b;
}

// Brute-force: energy at every breakpoint within [lo, hi].
bool window_idle(const ChannelOccupancy& occ, Micros lo, Micros hi, double threshold) {
  if (occ.energy_dbm_at(lo) >= threshold) return false;
  for (const auto& b : occ.bursts()) {
    for (const auto t : {b.start, b.end}) {
      if (t >= lo && t <= hi && occ.energy_dbm_at(t) >= threshold) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Tdd, DefaultPattern) {
  const TddConfig cfg;
  EXPECT_DOUBLE_EQ(cfg.dl_fraction(), 0.7);
  EXPECT_EQ(cfg.guard_slots(), 1);
  for (int i = 0; i < 7; ++i) EXPECT_EQ(schedule_tdd(cfg, i), SlotKind::DL);
  EXPECT_EQ(schedule_tdd(cfg, 7), SlotKind::GUARD);
  EXPECT_EQ(schedule_tdd(cfg, 8), SlotKind::UL);
  EXPECT_EQ(schedule_tdd(cfg, 9), SlotKind::UL);
  EXPECT_EQ(schedule_tdd(cfg, 10), SlotKind::DL);
  EXPECT_EQ(schedule_tdd(cfg, -1), SlotKind::UL);
  EXPECT_EQ(next_slot_of(cfg, SlotKind::UL, 0), 8);
  EXPECT_EQ(next_slot_of(cfg, SlotKind::DL, 8), 10);
}

TEST(Tdd, InvalidConfig) {
  EXPECT_THROW((TddConfig{10, 9, 2}.validate()), ValidationError);
  EXPECT_THROW((TddConfig{0, 0, 0}.validate()), ValidationError);
}

TEST(CellSearch, Steps) {
  auto r = ue_cell_search(n46(), spectrum::Gscn{8993});
  EXPECT_EQ(r.found, spectrum::Gscn{8993});
  EXPECT_EQ(r.steps, 1u);
  r = ue_cell_search(n46(), spectrum::Gscn{9530});
  EXPECT_EQ(r.steps, 538u);
  r = ue_cell_search(n46(), std::nullopt);
  EXPECT_FALSE(r.found);
  EXPECT_EQ(r.steps, 538u);
}

TEST(Lbt, IdleChannelGrantsAfterCca) {
  ChannelOccupancy occ;
  Rng rng(1);
  const LbtConfig cfg;
  const auto d = lbt_gate(occ, cfg, Micros{1000}, Micros{100000}, rng);
  EXPECT_TRUE(d.granted);
  EXPECT_EQ(d.at, Micros{1025});
}

TEST(Lbt, AlwaysBusyDefers) {
  ChannelOccupancy occ({Burst{Micros{0}, Micros{1'000'000}, -50}});
  Rng rng(1);
  const auto d = lbt_gate(occ, LbtConfig{}, Micros{10}, Micros{500'000}, rng);
  EXPECT_FALSE(d.granted);
}

TEST(Lbt, GrantAfterForeignBurst) {
  ChannelOccupancy occ({Burst{Micros{0}, Micros{400}, -60}});
  Rng rng(3);
  const auto d = lbt_gate(occ, LbtConfig{}, Micros{100}, Micros{100000}, rng);
  ASSERT_TRUE(d.granted);
  EXPECT_GE(d.at, Micros{425});
}

TEST(Lbt, WeakBurstsDoNotBlockButSumDoes) {
  const LbtConfig cfg;
  // Two -75 dBm bursts overlap to about -72 dBm.
  ChannelOccupancy occ({Burst{Micros{0}, Micros{1000}, -75}, Burst{Micros{500}, Micros{800}, -75}});
  const auto busy = occ.busy_intervals(cfg.cca_threshold_dbm);
  ASSERT_EQ(busy.size(), 1u);
  EXPECT_EQ(busy[0].start, Micros{500});
  EXPECT_EQ(busy[0].end, Micros{800});
  ChannelOccupancy weak({Burst{Micros{0}, Micros{1000}, -75}});
  EXPECT_TRUE(weak.busy_intervals(cfg.cca_threshold_dbm).empty());
}

TEST(LbtProperty, NeverGrantsIntoEnergy) {
  Rng rng(777);
  const LbtConfig cfg;
  for (int trial = 0; trial < 100000; ++trial) {
    ChannelOccupancy occ;
    const int n = static_cast<int>(rng.uniform_int(0, 6));
    for (int i = 0; i < n; ++i) {
      const auto s = static_cast<std::int64_t>(rng.uniform_int(0, 2000));
      const auto len = static_cast<std::int64_t>(rng.uniform_int(1, 400));
      occ.add(Burst{Micros{s}, Micros{s + len}, rng.uniform(-85, -55)});
    }
    const Micros now{static_cast<std::int64_t>(rng.uniform_int(0, 2000))};
    const auto d = lbt_gate(occ, cfg, now, now + Micros{5000}, rng);
    if (!d.granted) continue;
    ASSERT_GE(d.at, now + cfg.cca_duration);
    ASSERT_TRUE(window_idle(occ, d.at - cfg.cca_duration, d.at, cfg.cca_threshold_dbm))
        << "trial " << trial << " grant at " << d.at.count();
    if (n == 0) ASSERT_EQ(d.at, now + cfg.cca_duration);
  }
}

TEST(Ue, AttachHappyPath) {
  corenet::SubscriberStore s;
  s.add({"208950000000031", true});
  corenet::CoreNetwork core(corenet::CoreConfig{}, s);
  UeStateMachine ue("ue1", "208950000000031");
  const auto& st = attach(ue, AttachContext{&n46(), spectrum::Gscn{9061}, true, &core});
  EXPECT_EQ(st.phase, UePhase::SESSION_ACTIVE);
  ASSERT_TRUE(st.session);
  EXPECT_EQ(st.session->ip.to_string(), "12.1.1.2");
  ASSERT_EQ(ue.trace().size(), 4u);
  for (std::size_t i = 0; i < ue.trace().size(); ++i) {
    EXPECT_EQ(static_cast<int>(ue.trace()[i].to), static_cast<int>(ue.trace()[i].from) + 1);
  }
}

TEST(Ue, AttachFailures) {
  corenet::CoreNetwork core(corenet::CoreConfig{}, corenet::SubscriberStore{});
  UeStateMachine unknown("ue1", "208950000000031");
  const auto& st = attach(unknown, AttachContext{&n46(), spectrum::Gscn{9061}, true, &core});
  EXPECT_EQ(st.phase, UePhase::SYNCED);
  ASSERT_TRUE(st.failure);
  EXPECT_EQ(st.failure->kind, AttachFailureKind::RegistrationRejected);
  EXPECT_EQ(st.failure->detail, "unknown-subscriber");

  UeStateMachine dark("ue2", "208950000000031");
  const auto& st2 = attach(dark, AttachContext{&n46(), std::nullopt, true, &core});
  EXPECT_EQ(st2.phase, UePhase::SCANNING);
  EXPECT_EQ(st2.failure->kind, AttachFailureKind::CellNotFound);
}

TEST(Ue, IllegalTransitions) {
  UeStateMachine ue("ue1", "208950000000031");
  EXPECT_THROW(ue.registered(), StateError);
  ue.start_scan();
  EXPECT_THROW(ue.start_scan(), StateError);
  ue.synced(spectrum::Gscn{9000}, 8);
  ue.reset();
  EXPECT_EQ(ue.state().phase, UePhase::POWERED);
}
