#ifndef PERMCYCLES_LOG_SPACE_HPP
#define PERMCYCLES_LOG_SPACE_HPP

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace permcycles {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)) without leaving log scale.
inline double log_add(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

/// Streaming log-sum-exp accumulator. Keeps a running maximum and a sum of
/// exponentials rescaled to it, so one exp() per term instead of a
/// two-pass max/sum over stored terms.
class LogAccumulator {
 public:
  void add(double log_term) {
    if (log_term == kLogZero) return;
    if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      if (max_ != kLogZero) sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      else sum_ = 1.0;
      max_ = log_term;
    }
  }

  bool empty() const { return max_ == kLogZero; }

  double value() const {
    if (max_ == kLogZero) return kLogZero;
    return max_ + std::log(sum_);
  }

 private:
  double max_ = kLogZero;
  double sum_ = 0.0;
};

/// log Σ exp(v[i]) by two passes (max, then rescaled sum).
inline double log_sum_exp(std::span<const double> v) {
  double m = kLogZero;
  for (double x : v)
    if (x > m) m = x;
  if (m == kLogZero) return kLogZero;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

/// Normalizes log weights in place to log probabilities; returns the log
/// normalization constant.
inline double log_normalize(std::vector<double>& log_w) {
  double z = log_sum_exp(log_w);
  for (double& x : log_w) x -= z;
  return z;
}

/// Compensated (Kahan) summation for long plain-space reductions.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

}  // namespace permcycles

#endif  // PERMCYCLES_LOG_SPACE_HPP
