#include <benchmark/benchmark.h>

#include <vector>

#include "permcycles/exact.hpp"

namespace {

using namespace permcycles;

WeightModel theta_k_equals_k(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t k = 1; k <= n; ++k) t[k - 1] = static_cast<double>(k);
  return WeightModel::explicit_list(std::move(t));
}

void BM_compute_h(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  WeightModel model = theta_k_equals_k(n);
  for (auto _ : state) {
    ExactTable t = compute_h(model, n);
    benchmark::DoNotOptimize(t.log_h.back());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_compute_h)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void BM_distribution(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  WeightModel model = theta_k_equals_k(n);
  for (auto _ : state) {
    CycleCountDistribution d = cycle_count_distribution(model, n);
    benchmark::DoNotOptimize(d.log_h);
  }
}
BENCHMARK(BM_distribution)->RangeMultiplier(4)->Range(64, 1024);

void BM_moment_recurrence(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  WeightModel model = theta_k_equals_k(n);
  for (auto _ : state) {
    Moments m = exact_moments_by_recurrence(model, n);
    benchmark::DoNotOptimize(m.mean);
  }
}
BENCHMARK(BM_moment_recurrence)->RangeMultiplier(4)->Range(256, 4096);

}  // namespace
