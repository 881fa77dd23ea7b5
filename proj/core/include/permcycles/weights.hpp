#ifndef PERMCYCLES_WEIGHTS_HPP
#define PERMCYCLES_WEIGHTS_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace permcycles {

/// Supported weight sequence families. All parametric families have unit
/// radius of convergence; explicit lists carry their own radius.
enum class WeightKind { kEwens, kAlgebraic, kSubexponential, kExplicit };

/// g and its first three derivatives at a real point.
struct DerivBundle {
  double g;
  double g1;
  double g2;
  double g3;
};

/// Same bundle in log scale (all quantities are nonnegative on [0, rho)).
struct LogDerivBundle {
  double log_g;
  double log_g1;
  double log_g2;
  double log_g3;
};

/// Real evaluation of g with an honest truncation error for explicit lists:
/// value = g as evaluated, tail_bound bounds the mass of dropped terms
/// (zero for closed-form families).
struct GEval {
  double value;
  double log_value;
  double tail_bound;
};

/// A complex value v represented as mantissa * exp(log_scale), so circle
/// evaluations stay representable when g itself overflows a double.
struct ScaledComplex {
  std::complex<double> mantissa;
  double log_scale;

  std::complex<double> value() const {
    return mantissa * std::exp(log_scale);
  }
};

/// Constant analytic tail for explicit lists: theta_k = theta_inf for all k
/// beyond the stored list. Forces radius 1.
struct ConstantTail {
  double theta_inf;
};

/// A weight sequence theta_1, theta_2, ... together with closed-form access
/// to its generating function g(t) = sum_k theta_k t^k / k and the saddle
/// functions a(r) = r g'(r), b(r) = r g'(r) + r^2 g''(r).
///
/// Immutable after construction; safe to share across threads.
class WeightModel {
 public:
  static WeightModel ewens(double theta0);
  static WeightModel algebraic(double beta, double gamma);
  static WeightModel subexponential(double beta);
  static WeightModel explicit_list(std::vector<double> theta,
                                   double radius = 1.0,
                                   std::optional<ConstantTail> tail = {});

  WeightKind kind() const { return kind_; }
  double radius() const { return radius_; }
  double theta0() const { return theta0_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  const std::vector<double>& explicit_thetas() const { return theta_; }

  /// Default materialization order for series access on parametric models.
  std::size_t series_order() const { return series_order_; }

  /// g at a complex point, |t| < radius. Closed form for parametric
  /// families, truncated series plus tail for explicit lists.
  std::complex<double> eval_g(std::complex<double> t) const;

  /// g at a real point in [0, radius). Throws std::overflow_error when the
  /// value exceeds the double range; use eval_log_g there.
  double eval_g(double r) const;
  double eval_log_g(double r) const;
  GEval eval_g_with_bound(double r) const;

  DerivBundle eval_derivs(double r) const;
  LogDerivBundle eval_log_derivs(double r) const;

  double a_of(double r) const;
  double b_of(double r) const;
  double log_a(double r) const;
  double log_b(double r) const;

  /// r g'(r) + 3 r^2 g''(r) + r^3 g'''(r): the scale of the cubic remainder
  /// in the circle expansion of g.
  double remainder_scale(double r) const;

  /// log theta_k, k >= 1. Closed form where available; for the
  /// sub-exponential family this materializes series coefficients, so
  /// prefer log_thetas for bulk access.
  double log_theta(std::int64_t k) const;
  double theta(std::int64_t k) const;

  /// log theta_1 .. log theta_n as a vector (index 0 unused, set to -inf).
  std::vector<double> log_thetas(std::size_t n) const;

  /// Model with every weight multiplied by exp(-s). Ewens stays Ewens;
  /// other families materialize an explicit list of length at least
  /// max(order, series_order()).
  WeightModel tilt(double s, std::size_t order = 0) const;

  /// g(0) of the closed form. The series sum_{k>=1} theta_k t^k / k always
  /// vanishes at 0, so exact tables built from the weights correspond to
  /// exp(g - series_constant); the constant cancels in all probabilities.
  double series_constant() const;

  /// Truncation tail bound theta_max r^N / (N (1-r)) for explicit lists
  /// without an analytic tail; zero otherwise.
  double truncation_tail_bound(double r) const;

  /// Scaled evaluation of g(r e^{i phi}) on the circle |z| = r.
  ScaledComplex eval_g_circle(double r, double phi) const;

  /// Scaled evaluation of z g'(z) + 3 z^2 g''(z) + z^3 g'''(z) at
  /// z = r e^{i phi}: the third phi-derivative of g along the circle is
  /// -i times this quantity.
  ScaledComplex eval_d3_circle(double r, double phi) const;

  std::string describe() const;

 private:
  WeightModel() = default;
  void check_real_domain(double r) const;

  WeightKind kind_ = WeightKind::kEwens;
  double radius_ = 1.0;
  double theta0_ = 1.0;  // ewens
  double beta_ = 1.0;    // algebraic, subexponential
  double gamma_ = 1.0;   // algebraic
  std::vector<double> theta_;      // explicit list, 1-based semantics
  std::vector<double> log_theta_;  // cached logs of the list
  std::optional<ConstantTail> tail_;
  std::size_t series_order_ = 4096;
};

/// Parses the JSON model descriptor:
///   {"kind":"ewens","theta":1.0}
///   {"kind":"algebraic","beta":2.0,"gamma":1.0}
///   {"kind":"subexp","beta":1.0}
///   {"kind":"explicit","theta":[...],"radius":1.0[,"tail_theta":c]}
/// Unknown fields are rejected.
WeightModel model_from_json(const std::string& text);
std::string model_to_json(const WeightModel& model);

}  // namespace permcycles

#endif  // PERMCYCLES_WEIGHTS_HPP
