// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "duplex/mimo_mc.hpp"
#include "duplex/rate_engine.hpp"

using namespace duplex;

static void BM_ErgodicRate(benchmark::State& state) {
  McConfig cfg;
  cfg.n_samples = 4096;
  cfg.threads = 1;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ergodic_rate(n, n, 1e5, cfg).mean_rate);
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.n_samples));
}
BENCHMARK(BM_ErgodicRate)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

static void BM_TwoHopFdPowerSearch(benchmark::State& state) {
  McConfig cfg;
  cfg.n_samples = 256;
  cfg.threads = 1;
  RateSearchOptions opts;
  opts.power_points_per_decade = 10;
  const RelayBudgets b{make_budget(1e5), make_budget(0.0, 1.0, 1.0, 1e5), make_budget(0.0)};
  for (auto _ : state) {
    const auto r = twohop_fd_rate({4, 8, 4}, DuplexMode::AntennaConservedFD, b, SiParams(0.5), cfg, opts);
    benchmark::DoNotOptimize(r.r_ab.mean_rate);
  }
}
BENCHMARK(BM_TwoHopFdPowerSearch);

BENCHMARK_MAIN();
