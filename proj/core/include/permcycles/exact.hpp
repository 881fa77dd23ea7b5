#ifndef PERMCYCLES_EXACT_HPP
#define PERMCYCLES_EXACT_HPP

#include <cstddef>
#include <limits>
#include <map>
#include <vector>

#include "permcycles/weights.hpp"

namespace permcycles {

/// Log-space table of the normalization constants h_0..h_N of a weight
/// model, built by the convolution recurrence n h_n = sum_j theta_j h_{n-j}.
struct ExactTable {
  WeightModel model;
  std::vector<double> log_h;  // log_h[n] = log h_n; log h_0 = 0

  std::size_t max_n() const { return log_h.size() - 1; }

  /// Worst relative violation of the defining recurrence over 1..max_n,
  /// recomputed from the stored values.
  double max_recurrence_residual() const;
};

ExactTable compute_h(const WeightModel& model, std::size_t n_max);

/// log G_{n,s}: n-th coefficient of exp(e^{-s} g(t)), via the h-recurrence
/// on the tilted model.
double tilted_log_coefficient(const WeightModel& model, std::size_t n,
                              double s);

/// Exact distribution of the cycle count K at a fixed n, in log scale.
/// log_mass[k] is the unnormalized mass h_{n,k}; log_h the normalization
/// (computed independently through the scalar recurrence). For large n the
/// support is truncated at a cap k_max certified by an exponential-moment
/// bound; log_tail_bound bounds the dropped unnormalized mass (-inf when
/// the full support was computed).
struct CycleCountDistribution {
  std::size_t n = 0;
  std::vector<double> log_mass;  // index k = 0..k_max
  double log_h = 0.0;
  std::size_t k_max = 0;
  double log_tail_bound = -std::numeric_limits<double>::infinity();

  bool full_support() const { return k_max >= n; }
  double log_prob(std::size_t k) const;
  double prob(std::size_t k) const;
};

enum class SupportPolicy {
  kAuto,  // full support for small n, certified cap for large n
  kFull,  // always the full k range 0..n
};

CycleCountDistribution cycle_count_distribution(
    const WeightModel& model, std::size_t n,
    SupportPolicy policy = SupportPolicy::kAuto, unsigned n_threads = 0);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean and variance of K from a normalized distribution, by compensated
/// summation over shifted k.
Moments exact_moments(const CycleCountDistribution& dist);

/// Mean and variance of K at n without materializing the distribution:
/// log-space recurrences for the q-derivatives of the bivariate series at
/// q = 1. O(n^2) time, O(n) memory.
Moments exact_moments_by_recurrence(const WeightModel& model, std::size_t n);

/// One cycle type (partition of n) with its exact probability.
struct CycleTypeProbability {
  std::map<std::size_t, std::size_t> counts;  // cycle length -> multiplicity
  double log_prob;
};

struct BruteForceResult {
  double log_h;
  CycleCountDistribution dist;
  std::vector<CycleTypeProbability> cycle_types;
};

/// Reference values for small n by enumerating integer partitions
/// (conjugacy classes). Rejects n > 9.
BruteForceResult brute_force(const WeightModel& model, std::size_t n);

/// E exp(-s K) computed from the distribution, cross-checked against
/// G_{n,s}/h_n from tilted tables; throws if the two routes disagree beyond
/// 1e-9 relative.
double mgf_exact(const WeightModel& model, std::size_t n, double s);

}  // namespace permcycles

#endif  // PERMCYCLES_EXACT_HPP
