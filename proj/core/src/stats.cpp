#include "permcycles/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace permcycles {

// Hart, "Computer Approximations" (1968), algorithm 5666 for the normal
// integral; classical double-precision rational fit.
double normal_cdf(double z) {
  if (z > 37.0) return 1.0;
  if (z < -37.0) return 0.0;

  static const double p[7] = {
      220.2068679123761,  221.2135961699311,   112.0792914978709,
      33.91286607838300,  6.373962203531650,   0.7003830644436881,
      0.03526249659989109};
  static const double q[8] = {
      440.4137358247522,  793.8265125199484,   637.3336333788311,
      296.5642487796737,  86.78073220294608,   16.06417757920695,
      1.755667163182642,  0.08838834764831844};
  static const double root2pi = 2.506628274631000502;
  static const double cutoff = 7.071;  // 10/sqrt(2)

  const double zabs = std::fabs(z);
  const double expntl = std::exp(-0.5 * zabs * zabs);
  double pr;
  if (zabs < cutoff) {
    double num = ((((((p[6] * zabs + p[5]) * zabs + p[4]) * zabs + p[3]) *
                        zabs + p[2]) * zabs + p[1]) * zabs + p[0]);
    double den = (((((((q[7] * zabs + q[6]) * zabs + q[5]) * zabs + q[4]) *
                         zabs + q[3]) * zabs + q[2]) * zabs + q[1]) * zabs +
                  q[0]);
    pr = expntl * num / den;
  } else {
    pr = expntl / root2pi /
         (zabs + 1.0 / (zabs + 2.0 / (zabs + 3.0 / (zabs + 4.0 /
                    (zabs + 0.65)))));
  }
  return z < 0.0 ? pr : 1.0 - pr;
}

namespace {

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16)
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw std::runtime_error("gamma_p: series did not converge");
}

// Continued fraction for Q(a, x), valid for x >= a + 1 (modified Lentz).
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16)
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw std::runtime_error("gamma_q: continued fraction did not converge");
}

}  // namespace

double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::domain_error("gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::domain_error("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_squared_sf(double x, double df) {
  if (x <= 0.0) return 1.0;
  return gamma_q(0.5 * df, 0.5 * x);
}

ChiSquareResult chi_square_gof(std::span<const double> observed,
                               std::span<const double> expected,
                               double min_expected) {
  if (observed.size() != expected.size())
    throw std::invalid_argument("chi_square_gof: size mismatch");

  // Pool left to right: a bin whose running expectation is still below the
  // floor is merged with the next one. A trailing underfull bin joins its
  // predecessor.
  std::vector<double> obs, exp;
  double o_acc = 0.0, e_acc = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    o_acc += observed[i];
    e_acc += expected[i];
    if (e_acc >= min_expected) {
      obs.push_back(o_acc);
      exp.push_back(e_acc);
      o_acc = e_acc = 0.0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0.0) {
    if (!exp.empty()) {
      obs.back() += o_acc;
      exp.back() += e_acc;
    } else {
      obs.push_back(o_acc);
      exp.push_back(e_acc);
    }
  }

  ChiSquareResult r;
  r.bins_used = exp.size();
  if (exp.size() < 2) {
    r.df = 0.0;
    r.p_value = 1.0;
    return r;
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < exp.size(); ++i) {
    double d = obs[i] - exp[i];
    stat += d * d / exp[i];
  }
  r.statistic = stat;
  r.df = static_cast<double>(exp.size() - 1);
  r.p_value = chi_squared_sf(stat, r.df);
  return r;
}

}  // namespace permcycles
