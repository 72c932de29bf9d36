/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include <benchmark/benchmark.h>

#include "nrusim/access/lbt.hpp"
#include "nrusim/common/rng.hpp"
#include "nrusim/sim/scenario.hpp"
#include "nrusim/sim/testbed.hpp"
#include "nrusim/spectrum/raster.hpp"
#include "nrusim/userplane/gtpu.hpp"

using namespace nrusim;

namespace {

const sim::Environment& env() {
  static const sim::Environment e = sim::Environment::load(NRUSIM_BENCH_DATA_DIR);
  return e;
}

void BM_ArfcnRoundTrip(benchmark::State& state) {
  std::uint32_t a = 743333;
  for (auto _ : state) {
    const auto f = spectrum::arfcn_to_frequency(spectrum::Arfcn{a});
    benchmark::DoNotOptimize(spectrum::frequency_to_arfcn(f));
    if (++a > 795000) a = 743333;
  }
}
BENCHMARK(BM_ArfcnRoundTrip);

void BM_SsScan(benchmark::State& state) {
  const auto& band = env().bands.find("n46");
  for (auto _ : state) benchmark::DoNotOptimize(spectrum::ss_scan_candidates(band));
}
BENCHMARK(BM_SsScan);

void BM_GtpuEncodeDecode(benchmark::State& state) {
  std::vector<std::uint8_t> payload(static_cast<std::size_t>(state.range(0)), 0xAB);
  for (auto _ : state) {
    const auto enc = userplane::encode_gtpu(0x1234, payload);
    benchmark::DoNotOptimize(userplane::decode_gtpu(enc));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_GtpuEncodeDecode)->Arg(84)->Arg(1400);

void BM_LbtGate(benchmark::State& state) {
  Rng rng(3);
  access::ChannelOccupancy occ;
  for (int i = 0; i < state.range(0); ++i) {
    const auto s = static_cast<std::int64_t>(rng.uniform_int(0, 1'000'000));
    occ.add(access::Burst{Micros{s}, Micros{s + 500}, -60});
  }
  const access::LbtConfig cfg;
  std::int64_t now = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(access::lbt_gate(occ, cfg, Micros{now}, Micros{now + 20'000}, rng));
    now = (now + 997) % 1'000'000;
  }
}
BENCHMARK(BM_LbtGate)->Arg(0)->Arg(100)->Arg(1000);

void BM_RunScenario(benchmark::State& state) {
  const auto s = sim::load_scenario(std::string(NRUSIM_BENCH_SCENARIO_DIR) + "/test_a.yaml", env());
  for (auto _ : state) benchmark::DoNotOptimize(sim::run_scenario(s, env()));
}
BENCHMARK(BM_RunScenario)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
