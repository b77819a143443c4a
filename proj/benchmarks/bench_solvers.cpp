#include <benchmark/benchmark.h>

#include "fairassort/instance_gen.hpp"
#include "fairassort/policy.hpp"
#include "fairassort/rng.hpp"
#include "fairassort/simulate.hpp"
#include "fairassort/static_solver.hpp"
#include "fairassort/upper_bound.hpp"

namespace {

using namespace fairassort;

DynamicInstance bench_instance(int n, long T, double alpha, std::uint64_t seed) {
  GenConfig cfg;
  cfg.n = n;
  cfg.T = T;
  cfg.p0 = 0.1;
  cfg.gamma = 0.6;
  cfg.alpha = alpha;
  cfg.seed = seed;
  return generate(cfg);
}

void BM_SolveBms(benchmark::State& state) {
  DynamicInstance dyn = bench_instance(static_cast<int>(state.range(0)), 2000, 0.5, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_bms(dyn.base()).revenue);
  }
}
BENCHMARK(BM_SolveBms)->Arg(10)->Arg(40)->Arg(100);

void BM_UpperBoundExact(benchmark::State& state) {
  DynamicInstance dyn = bench_instance(static_cast<int>(state.range(0)), 400, 0.5, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_upper_bound_exact(dyn).objective);
  }
}
BENCHMARK(BM_UpperBoundExact)->Arg(8)->Arg(10)->Arg(12);

void BM_UpperBoundFptas(benchmark::State& state) {
  DynamicInstance dyn = bench_instance(8, 100, 0.5, 3);
  double eps = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_upper_bound_fptas(dyn, eps, 1).objective);
  }
}
BENCHMARK(BM_UpperBoundFptas)->Arg(20)->Arg(10)->Arg(5);

void BM_CappedMeanSales(benchmark::State& state) {
  long T = state.range(0);
  CounterRng rng = CounterRng::stream(4, 0);
  for (auto _ : state) {
    double p = rng.next_double(0.001, 0.4);
    long c = 1 + static_cast<long>(rng.next_below(static_cast<std::uint64_t>(T)));
    benchmark::DoNotOptimize(capped_mean_sales(T, p, c));
  }
}
BENCHMARK(BM_CappedMeanSales)->Arg(400)->Arg(2000)->Arg(16000);

void BM_SimulateFixedTarget(benchmark::State& state) {
  DynamicInstance dyn = bench_instance(10, state.range(0), 0.5, 5);
  UpperBoundSolution ub = solve_upper_bound_exact(dyn);
  PolicySpec spec = calibrate_policy(dyn, ub, 1e-3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(dyn, spec, 50, 7).mean_revenue);
  }
}
BENCHMARK(BM_SimulateFixedTarget)->Arg(200)->Arg(800);

}  // namespace

BENCHMARK_MAIN();
