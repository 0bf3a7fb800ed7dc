#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "majdyn/fpe.hpp"
#include "majdyn/mixing.hpp"

using namespace majdyn;

static void BM_FpeStep(benchmark::State& state) {
  const Grid grid(static_cast<int>(state.range(0)));
  const FpeModel model = porous_model(1.0, 2.0);
  Density p = Density::sampled(grid, [](double x) {
    return 1.0 - 0.5 * std::cos(2.0 * std::numbers::pi * x);
  });
  const double dt = 0.45 * grid.h() * grid.h() / 3.0;
  for (auto _ : state) {
    p = fpe_step(p, model, dt);
    benchmark::DoNotOptimize(p);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FpeStep)->Range(256, 1 << 14);

static void BM_CorrelationSweep(benchmark::State& state) {
  const MapSystem sys = logistic_map(1);
  const Observable f = make_observable("centered_x", Grid(2048));
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(correlation_sequence(sys, f, f, n_max, 100'000));
  }
  state.SetItemsProcessed(state.iterations() * n_max * 100'000);
}
BENCHMARK(BM_CorrelationSweep)->Arg(8)->Arg(32);

static void BM_InvariantHistogram(benchmark::State& state) {
  const MapSystem sys = logistic_map(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimate_invariant_density(sys, 1'000, state.range(0), Grid(64)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_InvariantHistogram)->Arg(100'000)->Arg(1'000'000);
