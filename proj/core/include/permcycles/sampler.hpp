#ifndef PERMCYCLES_SAMPLER_HPP
#define PERMCYCLES_SAMPLER_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "permcycles/exact.hpp"
#include "permcycles/rng.hpp"
#include "permcycles/stats.hpp"
#include "permcycles/weights.hpp"

namespace permcycles {

/// Cycle type of a permutation: multiplicities of each cycle length.
struct CycleType {
  std::size_t n = 0;
  std::map<std::size_t, std::size_t> counts;  // length -> multiplicity

  std::size_t total_cycles() const {
    std::size_t k = 0;
    for (auto [len, c] : counts) {
      (void)len;
      k += c;
    }
    return k;
  }
};

/// Draws one cycle type exactly from the measure via the first-cycle-length
/// recursion: the cycle containing a marked element has length j with
/// probability theta_j h_{m-j} / (m h_m), then recurse on the remaining
/// m - j elements. The table must cover 0..n.
CycleType sample_cycle_type(const WeightModel& model, const ExactTable& table,
                            std::size_t n, SplitMix64Stream& rng);

/// Reusable sampler for a fixed n: precomputes an alias structure for the
/// first draw (the only O(n) scan shared by every sample) and asserts the
/// recursion weights normalize to 1 within 1e-9.
class CycleSampler {
 public:
  CycleSampler(const WeightModel& model, ExactTable table, std::size_t n);

  CycleType sample(SplitMix64Stream& rng) const;
  std::size_t n() const { return n_; }

 private:
  std::size_t draw_first_length(SplitMix64Stream& rng) const;
  std::size_t draw_length_scan(std::size_t m, SplitMix64Stream& rng) const;

  ExactTable table_;
  std::vector<double> log_theta_;
  std::size_t n_;
  // Vose alias table over lengths 1..n for the first draw.
  std::vector<double> alias_prob_;
  std::vector<std::uint32_t> alias_idx_;
};

/// Monte Carlo summary of the cycle count. Mean/variance are derived from
/// the histogram (variance with the N-1 divisor), so identical
/// (seed, n, N) reproduce the summary bit for bit regardless of threading.
struct McSummary {
  std::size_t n = 0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double variance = 0.0;
  double ks_distance = 0.0;  // against N(mean, variance); NaN when sigma = 0
  std::vector<std::uint64_t> histogram;  // index k = 0..n
};

McSummary monte_carlo(const WeightModel& model, std::size_t n,
                      std::size_t n_samples, std::uint64_t seed,
                      unsigned n_threads = 0);

/// Continuity-corrected Kolmogorov distance of an exact pmf, normalized by
/// (mu, sigma), to the standard normal: sup_k |CDF(k) - Phi((k+1/2-mu)/sigma)|.
double ks_distance(const CycleCountDistribution& dist, double mu,
                   double sigma);

/// Standard empirical KS statistic of a sample histogram over k against
/// N(mu, sigma^2).
double ks_distance(const std::vector<std::uint64_t>& histogram, double mu,
                   double sigma);

/// Chi-squared goodness of fit of n_samples draws of K against the exact
/// pmf at n, with underfull bins pooled.
ChiSquareResult sampler_gof(const WeightModel& model, std::size_t n,
                            std::size_t n_samples, std::uint64_t seed);

}  // namespace permcycles

#endif  // PERMCYCLES_SAMPLER_HPP
