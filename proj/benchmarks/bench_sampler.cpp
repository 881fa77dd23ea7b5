#include <benchmark/benchmark.h>

#include <vector>

#include "permcycles/sampler.hpp"

namespace {

using namespace permcycles;

WeightModel theta_k_equals_k(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t k = 1; k <= n; ++k) t[k - 1] = static_cast<double>(k);
  return WeightModel::explicit_list(std::move(t));
}

void BM_sample_cycle_type(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  WeightModel model = theta_k_equals_k(n);
  CycleSampler sampler(model, compute_h(model, n), n);
  SplitMix64Stream rng(7, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(sampler.sample(rng).total_cycles());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_sample_cycle_type)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_monte_carlo_10k(benchmark::State& state) {
  WeightModel model = WeightModel::ewens(1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(monte_carlo(model, 100, 10000, 1).mean);
}
BENCHMARK(BM_monte_carlo_10k);

}  // namespace
