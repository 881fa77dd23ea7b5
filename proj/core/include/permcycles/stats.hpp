#ifndef PERMCYCLES_STATS_HPP
#define PERMCYCLES_STATS_HPP

#include <cstddef>
#include <span>

namespace permcycles {

/// Standard normal CDF by the Hart 5666 rational approximation
/// (absolute error below 1e-14 over the real line).
double normal_cdf(double z);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Survival function of the chi-squared distribution with df degrees of
/// freedom: P(X > x).
double chi_squared_sf(double x, double df);

struct ChiSquareResult {
  double statistic = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  std::size_t bins_used = 0;
};

/// Pearson goodness-of-fit of observed counts against expected counts.
/// Bins with expected count below min_expected are pooled into their
/// neighbor so the chi-squared reference distribution is trustworthy.
ChiSquareResult chi_square_gof(std::span<const double> observed,
                               std::span<const double> expected,
                               double min_expected = 5.0);

}  // namespace permcycles

#endif  // PERMCYCLES_STATS_HPP
