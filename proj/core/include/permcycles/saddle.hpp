#ifndef PERMCYCLES_SADDLE_HPP
#define PERMCYCLES_SADDLE_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "permcycles/weights.hpp"

namespace permcycles {

/// Solution of a(r) = x with the quantities the asymptotic formulas
/// consume. eta[0] is the implicit-differentiation value -x/b(r_x); the
/// higher eta_k come from finite differences of s -> log r_{exp(s) x}.
struct SaddlePoint {
  double x = 0.0;
  double r = 0.0;
  double g = 0.0;      // g(r)
  double b = 0.0;      // b(r)
  double log_g = 0.0;
  double log_b = 0.0;
  std::array<double, 4> eta{};  // eta_1..eta_4
  double eta1_fd = 0.0;         // finite-difference eta_1, for cross-checks
  double residual = 0.0;        // |a(r) - x| / x achieved by the solver
};

/// Solves a(r) = x on (0, rho) by bracketing bisection refined with
/// safeguarded Newton steps on log a, to relative residual 1e-12. Throws
/// std::domain_error when a is bounded on the interval (non-divergent
/// model) and std::runtime_error when the tolerance is unreachable.
SaddlePoint solve_saddle(const WeightModel& model, double x);

/// Radius only; cheaper when eta derivatives are not needed.
double solve_saddle_radius(const WeightModel& model, double x);

struct EtaDerivatives {
  std::array<double, 4> eta{};  // finite-difference values
  double eta1_closed = 0.0;     // -x / b(r_x)
};

/// eta_k(x) = (-1)^k d^k/ds^k log r_{exp(s) x} at s = 0, by central
/// differences with one Richardson refinement. Steps grow with the order
/// (1e-3 for k <= 2, 1e-2 and 5e-2 above) to keep the higher stencils out
/// of roundoff.
EtaDerivatives eta_derivatives(const WeightModel& model, double x,
                               int k_max = 4);

/// log G_{n,s} by the saddle-point formula
///   -log sqrt(2 pi) + s/2 - n log r + (1/2) log(1/b(r)) + e^{-s} g(r)
/// at r = r_{exp(s) n}. No (1+o(1)) correction is attempted.
double asymptotic_log_coefficient(const WeightModel& model, double n,
                                  double s);

struct AsymptoticMoments {
  double n = 0.0;
  double mu = 0.0;      // g(r_n)
  double sigma2 = 0.0;  // g(r_n) + n eta_1(n)
  double xi = 0.0;      // sup over [e^-M n, e^M n] of g(r_x) + x |eta_1(x)|
  bool sigma2_valid = false;
  std::string note;
};

/// Asymptotic mean/variance scales of the cycle count, with the error
/// scale xi approximated as a max over a 9-point geometric grid.
AsymptoticMoments asymptotic_moments(const WeightModel& model, double n,
                                     double big_m = 1.0);

/// Leading-order moments for g = gamma (1-t)^(-beta). The variance constant
/// is derived from g(r_n) and n eta_1(n) directly, which keeps the gamma
/// dependence consistent for gamma != 1.
AsymptoticMoments closed_form_algebraic(double beta, double gamma, double n);

struct SubexpMoments {
  AsymptoticMoments leading;
  double g_refined = 0.0;       // g(r_n) with the next-order terms
  double n_eta1_refined = 0.0;  // n eta_1(n) with the next-order terms
};

/// Leading-order moments for g = exp((1-t)^(-beta)), plus the refined
/// expansions of g(r_n) and n eta_1(n); requires n >= 3.
SubexpMoments closed_form_subexp(double beta, double n);

/// Family of candidate arc widths delta(r) for the admissibility checker.
struct DeltaSpec {
  enum class Form { kPower, kExpDecay };
  Form form = Form::kPower;
  double alpha = 1.5;
  /// Inner exponent of the exp-decay form exp(-alpha (1-r)^(-exponent));
  /// 0 means "use the model's beta when it has one, else 1".
  double exponent = 0.0;

  double log_delta(double r, double rho, double fallback_exponent) const;
  std::string describe() const;
};

struct ConditionReport {
  std::string name;
  bool pass = false;
  std::vector<double> r;       // witness grid actually used
  std::vector<double> margin;  // per-point margins, meaning depends on name
  std::string note;
};

struct AdmissibilityReport {
  DeltaSpec delta;
  bool overall = false;
  ConditionReport approximation;
  ConditionReport divergence;
  ConditionReport width;
  ConditionReport monotonicity;
};

/// Checks the four log-admissibility conditions on a grid of radii
/// approaching rho. Failures are verdicts, not errors.
///
/// approximation: the exact remainder of the circle expansion, computed by
///   quadrature of the third phi-derivative (cancellation-free), must obey
///   |R| <= c(r) (|phi|/delta)^3 with c(r) shrinking along the grid.
/// divergence: a, b increase and delta decreases along the grid.
/// width: the growth rate of log(delta^2 b) along the geometric grid must
///   be positive, the finite-grid surrogate of
///   "eps delta^2 b - log b -> infinity for every eps"; the literal
///   sequences for eps in {0.1, 1} are recorded in the margins.
/// monotonicity: Re g(r e^{i phi}) <= Re g(r e^{i delta}) for phi beyond
///   delta, checked on the phi grid.
AdmissibilityReport check_admissibility(const WeightModel& model,
                                        const DeltaSpec& delta,
                                        std::vector<double> r_grid = {},
                                        std::vector<double> phi_grid = {});

struct TechnicalConditionReport {
  bool applicable = true;  // false when the saddle solve fails upstream
  bool pass = false;
  std::vector<double> x;
  // max over the grid of |r^(k) x^k| / |r^(k-1) x^(k-1)| for k = 2,3,4
  std::array<double, 3> max_ratio{};
  std::string note;
};

/// Verifies |r_x^(k) x^k| <= 10 |r_x^(k-1) x^(k-1)| for k in {2,3,4} on a
/// geometric x grid, with derivatives estimated by finite differences.
TechnicalConditionReport check_technical_condition(
    const WeightModel& model, std::vector<double> x_grid = {});

struct LargeDeviationEstimate {
  double a = 0.0;
  double epsilon = 0.0;
  double estimate = 0.0;     // exp(-a^2/2)
  double prefactor = 0.0;    // 1 - epsilon^{-2}
  double delta_scale = 0.0;  // xi(n) sigma_n^{-3} a
  double tilt_s = 0.0;       // solution of Lambda'(s) = a
  bool regime_valid = false;
  AsymptoticMoments moments;
};

/// Large-deviation estimate for the normalized cycle count at level a with
/// window epsilon (> 1 so the prefactor is informative). The tilting
/// parameter is solved from the numeric Lambda built on the asymptotic
/// coefficient formula.
LargeDeviationEstimate large_deviation_estimate(const WeightModel& model,
                                                double n, double a,
                                                double epsilon);

/// True for families the circle method is known not to cover (the Ewens
/// width condition fails); computations proceed but are advisory.
bool known_non_admissible(const WeightModel& model);

}  // namespace permcycles

#endif  // PERMCYCLES_SADDLE_HPP
