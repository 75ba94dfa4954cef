// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include <benchmark/benchmark.h>

#include "duplex/dof_closed_form.hpp"
#include "duplex/dof_search.hpp"

using namespace duplex;

static void BM_TwoHopFdClosedForm(benchmark::State& state) {
  const SiParams si(0.5);
  for (auto _ : state) {
    double acc = 0.0;
    for (int n_r = 2; n_r <= 12; ++n_r) acc += twohop_fd_dof(4, n_r, 4, DuplexMode::AntennaConservedFD, si).dof;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_TwoHopFdClosedForm);

static void BM_TwoHopFdGrid(benchmark::State& state) {
  GridSpec grid;
  grid.tau_steps = 2;
  grid.gamma_steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const auto res = grid_maximin(
        [](double, double g, int r) {
          const double rx = 1.0 - 0.5 * g;
          return std::min({rx * 4, rx * r, g * (8 - r), g * 4});
        },
        8, grid);
    benchmark::DoNotOptimize(res.best_value);
  }
}
BENCHMARK(BM_TwoHopFdGrid)->Arg(2001)->Arg(20001);

static void BM_TwoWayFdRegion(benchmark::State& state) {
  const SiParams si(0.9);
  for (auto _ : state) {
    auto region = twoway_fd_region(6, 6, DuplexMode::RfChainConservedFD, si);
    benchmark::DoNotOptimize(region);
  }
}
BENCHMARK(BM_TwoWayFdRegion);

static void BM_ConvexHull(benchmark::State& state) {
  std::vector<DofPoint> pts;
  const int n = static_cast<int>(state.range(0));
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / n;
    pts.push_back({4.0 * t, 3.0 * (1.0 - t * t)});
  }
  for (auto _ : state) {
    auto region = convex_hull(pts);
    benchmark::DoNotOptimize(region);
  }
}
BENCHMARK(BM_ConvexHull)->Arg(100)->Arg(10000);
