#include <benchmark/benchmark.h>

#include <random>

#include "majdyn/generators.hpp"
#include "majdyn/majorization.hpp"

using namespace majdyn;

static void BM_CompareContinuous(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Grid grid(static_cast<int>(state.range(0)));
  const Density f = random_step_density(rng, grid, 0, 1 << 20);
  const Density g = random_step_density(rng, grid, 0, 1 << 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compare_continuous(f, g));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CompareContinuous)->Range(256, 1 << 20)->Complexity();

static void BM_DecreasingRearrangement(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Grid grid(static_cast<int>(state.range(0)));
  const Density d = random_step_density(rng, grid, 0, 1 << 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(d.rearranged_decreasing());
  }
}
BENCHMARK(BM_DecreasingRearrangement)->Range(256, 1 << 20);

static void BM_BatteryOracle(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const Grid grid(256);
  const DensityPair pair = random_comparison_pair(rng, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compare_by_battery(pair.f, pair.g, 200));
  }
}
BENCHMARK(BM_BatteryOracle);

BENCHMARK_MAIN();
