#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "permcycles/exact.hpp"
#include "permcycles/sampler.hpp"

using namespace permcycles;

namespace {

WeightModel theta_k_equals_k(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t k = 1; k <= n; ++k) t[k - 1] = static_cast<double>(k);
  return WeightModel::explicit_list(std::move(t));
}

std::string type_key(const CycleType& ct) {
  std::ostringstream os;
  for (auto [len, c] : ct.counts) os << len << 'x' << c << ';';
  return os.str();
}

std::string type_key(const std::map<std::size_t, std::size_t>& counts) {
  std::ostringstream os;
  for (auto [len, c] : counts) os << len << 'x' << c << ';';
  return os.str();
}

}  // namespace

TEST_CASE("single element is a fixed point") {
  WeightModel m = WeightModel::ewens(1.0);
  ExactTable t = compute_h(m, 1);
  SplitMix64Stream rng(1, 0);
  for (int i = 0; i < 8; ++i) {
    CycleType ct = sample_cycle_type(m, t, 1, rng);
    REQUIRE(ct.counts.size() == 1);
    CHECK(ct.counts.at(1) == 1);
  }
}

TEST_CASE("sampled cycle types partition n") {
  for (const auto& m : {WeightModel::ewens(2.0), theta_k_equals_k(37)}) {
    const std::size_t n = 37;
    ExactTable t = compute_h(m, n);
    SplitMix64Stream rng(7, 3);
    for (int i = 0; i < 200; ++i) {
      CycleType ct = sample_cycle_type(m, t, n, rng);
      std::size_t total = 0;
      for (auto [len, c] : ct.counts) total += len * c;
      CHECK(total == n);
    }
  }
}

TEST_CASE("first length two has probability 2/3 for theta_k = k at n = 2") {
  WeightModel m = theta_k_equals_k(2);
  ExactTable t = compute_h(m, 2);
  const int trials = 20000;
  int twos = 0;
  for (int i = 0; i < trials; ++i) {
    SplitMix64Stream rng(99, static_cast<std::uint64_t>(i));
    CycleType ct = sample_cycle_type(m, t, 2, rng);
    if (ct.counts.count(2)) ++twos;
  }
  const double p = 2.0 / 3.0;
  const double se = std::sqrt(p * (1 - p) / trials);
  CHECK(std::fabs(static_cast<double>(twos) / trials - p) < 5.0 * se);
}

TEST_CASE("cycle type frequencies match brute-force class probabilities") {
  for (const auto& m : {WeightModel::ewens(1.0), theta_k_equals_k(7)}) {
    const std::size_t n = 7;
    BruteForceResult bf = brute_force(m, n);
    CycleSampler sampler(m, compute_h(m, n), n);
    const std::size_t trials = 1000000;
    std::map<std::string, std::size_t> freq;
    for (std::size_t i = 0; i < trials; ++i) {
      SplitMix64Stream rng(1234, i);
      ++freq[type_key(sampler.sample(rng))];
    }
    for (const auto& ct : bf.cycle_types) {
      const double p = std::exp(ct.log_prob);
      const double observed =
          static_cast<double>(freq[type_key(ct.counts)]) /
          static_cast<double>(trials);
      const double se = std::sqrt(p * (1.0 - p) / trials);
      CHECK(std::fabs(observed - p) < 5.0 * se + 1e-12);
    }
  }
}

TEST_CASE("monte carlo summaries") {
  McSummary one = monte_carlo(WeightModel::ewens(1.0), 1, 1000, 5);
  CHECK(one.mean == doctest::Approx(1.0));
  CHECK(one.variance == doctest::Approx(0.0));

  // uniform permutations: mean K at n = 100 is H_100
  double h100 = 0.0;
  for (int j = 1; j <= 100; ++j) h100 += 1.0 / j;
  Moments ex = exact_moments_by_recurrence(WeightModel::ewens(1.0), 100);
  McSummary mc = monte_carlo(WeightModel::ewens(1.0), 100, 100000, 17);
  CHECK(ex.mean == doctest::Approx(h100).epsilon(1e-10));
  CHECK(std::fabs(mc.mean - ex.mean) <
        4.0 * std::sqrt(ex.variance / 100000.0));

  // heavier weights: compare against the exact recurrence at n = 400
  WeightModel tk = theta_k_equals_k(400);
  Moments ex400 = exact_moments_by_recurrence(tk, 400);
  McSummary mc400 = monte_carlo(tk, 400, 20000, 23);
  CHECK(std::fabs(mc400.mean - ex400.mean) <
        4.0 * std::sqrt(ex400.variance / 20000.0));
}

TEST_CASE("summaries are bit-identical across reruns and thread counts") {
  WeightModel m = theta_k_equals_k(60);
  McSummary a = monte_carlo(m, 60, 30000, 4242, 2);
  McSummary b = monte_carlo(m, 60, 30000, 4242, 2);
  McSummary c = monte_carlo(m, 60, 30000, 4242, 1);
  CHECK(a.histogram == b.histogram);
  CHECK(a.mean == b.mean);
  CHECK(a.variance == b.variance);
  CHECK(a.histogram == c.histogram);
  CHECK(a.mean == c.mean);
  McSummary d = monte_carlo(m, 60, 30000, 4243, 2);
  CHECK(a.histogram != d.histogram);
}

TEST_CASE("ks distance flags degenerate pmfs and rewards normal ones") {
  WeightModel m = theta_k_equals_k(2);
  CycleCountDistribution point = cycle_count_distribution(m, 1);
  CHECK(ks_distance(point, 1.0, 1.0) >= 0.3);  // point mass vs continuous

  // KS falls along n for the uniform measure (unit-scale version of the
  // acceptance criterion)
  std::vector<double> ks;
  for (std::size_t n : {100u, 400u}) {
    CycleCountDistribution d =
        cycle_count_distribution(WeightModel::ewens(1.0), n);
    Moments mo = exact_moments(d);
    ks.push_back(ks_distance(d, mo.mean, std::sqrt(mo.variance)));
  }
  CHECK(ks[1] < ks[0]);
  CHECK(ks[1] < 0.05);
  CHECK_THROWS_AS(ks_distance(point, 1.0, 0.0), std::domain_error);
}

TEST_CASE("empirical ks against a matching normal is small") {
  // histogram of a roughly normal pmf: use the sampler itself at n = 200
  WeightModel m = theta_k_equals_k(200);
  McSummary mc = monte_carlo(m, 200, 50000, 31);
  CHECK(mc.ks_distance < 0.12);
  CHECK(mc.ks_distance > 0.0);
}

TEST_CASE("chi-squared goodness of fit accepts the sampler") {
  ChiSquareResult r = sampler_gof(WeightModel::ewens(1.0), 10, 100000, 20240801);
  CHECK(r.p_value >= 1e-3);
  ChiSquareResult r2 = sampler_gof(theta_k_equals_k(50), 50, 100000, 20240801);
  CHECK(r2.p_value >= 1e-3);
}

TEST_CASE("sampler rejects unusable inputs") {
  WeightModel m = theta_k_equals_k(8);
  ExactTable t = compute_h(m, 4);
  SplitMix64Stream rng(1, 0);
  CHECK_THROWS_AS(sample_cycle_type(m, t, 8, rng), std::invalid_argument);
  WeightModel even_only = WeightModel::explicit_list({0.0, 1.0});
  CHECK_THROWS_AS(CycleSampler(even_only, compute_h(even_only, 3), 3),
                  std::domain_error);
  CHECK_THROWS_AS(monte_carlo(m, 8, 0, 1), std::invalid_argument);
}
