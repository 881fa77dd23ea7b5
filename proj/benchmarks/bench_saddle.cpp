#include <benchmark/benchmark.h>

#include "permcycles/saddle.hpp"

namespace {

using namespace permcycles;

void BM_solve_saddle(benchmark::State& state) {
  WeightModel model = WeightModel::algebraic(1.0, 1.0);
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_saddle_radius(model, x));
}
BENCHMARK(BM_solve_saddle)->RangeMultiplier(100)->Range(100, 1000000);

void BM_solve_saddle_subexp(benchmark::State& state) {
  WeightModel model = WeightModel::subexponential(1.0);
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_saddle_radius(model, x));
}
BENCHMARK(BM_solve_saddle_subexp)->RangeMultiplier(100)->Range(100, 1000000);

void BM_full_saddle_point(benchmark::State& state) {
  WeightModel model = WeightModel::algebraic(2.0, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_saddle(model, 1e4).eta[3]);
}
BENCHMARK(BM_full_saddle_point);

void BM_admissibility(benchmark::State& state) {
  WeightModel model = WeightModel::algebraic(1.0, 1.0);
  DeltaSpec delta{DeltaSpec::Form::kPower, 1.4, 0.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(check_admissibility(model, delta).overall);
}
BENCHMARK(BM_admissibility);

}  // namespace
