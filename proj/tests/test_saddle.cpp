#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "permcycles/exact.hpp"
#include "permcycles/saddle.hpp"

using namespace permcycles;

namespace {

WeightModel theta_k_equals_k(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t k = 1; k <= n; ++k) t[k - 1] = static_cast<double>(k);
  return WeightModel::explicit_list(std::move(t));
}

}  // namespace

TEST_CASE("saddle solve against the quadratic-formula oracle") {
  // r/(1-r)^2 = x solves to r = (2x + 1 - sqrt(4x + 1)) / (2x)
  WeightModel m = WeightModel::algebraic(1.0, 1.0);
  for (double x : {1.0, 100.0, 1e4, 1e6}) {
    const double oracle = (2.0 * x + 1.0 - std::sqrt(4.0 * x + 1.0)) / (2.0 * x);
    SaddlePoint sp = solve_saddle(m, x);
    CHECK(sp.r == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(sp.residual <= 1e-12);
  }
  CHECK(solve_saddle(m, 100.0).r ==
        doctest::Approx((201.0 - std::sqrt(401.0)) / 200.0).epsilon(1e-13));
}

TEST_CASE("r tends to zero with x") {
  // ewens(1): a(r) = r/(1-r), so r_x = x/(1+x)
  WeightModel ew = WeightModel::ewens(1.0);
  for (double x : {1e-2, 1e-5, 1e-8})
    CHECK(solve_saddle_radius(ew, x) ==
          doctest::Approx(x / (1.0 + x)).epsilon(1e-12));
}

TEST_CASE("residuals meet the tolerance across families") {
  std::vector<WeightModel> models = {
      WeightModel::algebraic(0.5, 1.0), WeightModel::algebraic(1.0, 1.0),
      WeightModel::algebraic(2.0, 1.5), WeightModel::subexponential(1.0),
      WeightModel::subexponential(2.0), theta_k_equals_k(2048)};
  for (const auto& m : models)
    for (double x : {1e2, 1e3, 1e4, 1e6})
      CHECK(solve_saddle(m, x).residual <= 1e-12);
  CHECK(solve_saddle(WeightModel::subexponential(1.0), 1e6).residual <= 1e-12);
  for (double x : {1e1, 1e2, 1e3})
    CHECK(solve_saddle(WeightModel::ewens(1.0), x).residual <= 1e-12);
}

TEST_CASE("bounded models are rejected with a diagnostic") {
  WeightModel poly = WeightModel::explicit_list({1.0, 2.0, 3.0});
  CHECK_THROWS_AS(solve_saddle(poly, 10.0), std::domain_error);
  CHECK_NOTHROW(solve_saddle(poly, 1.0));  // below the ceiling is fine
}

TEST_CASE("eta derivatives") {
  std::vector<WeightModel> models = {
      WeightModel::algebraic(1.0, 1.0), WeightModel::algebraic(2.0, 1.0),
      WeightModel::subexponential(1.0), WeightModel::ewens(1.0),
      WeightModel::ewens(2.0), theta_k_equals_k(4096)};
  for (const auto& m : models) {
    for (double x : {1e2, 1e3}) {
      EtaDerivatives e = eta_derivatives(m, x);
      CHECK(e.eta[0] < 0.0);
      CHECK(e.eta[0] == doctest::Approx(e.eta1_closed).epsilon(1e-6));
      // b(r_x) (-eta_1) = x via the finite-difference eta
      SaddlePoint sp = solve_saddle(m, x);
      CHECK(sp.b * (-sp.eta1_fd) == doctest::Approx(x).epsilon(1e-6));
    }
  }
  // n eta_1(n) ~ -sqrt(n)/2 for the simple algebraic family
  SaddlePoint sp = solve_saddle(WeightModel::algebraic(1.0, 1.0), 1e4);
  CHECK(1e4 * sp.eta[0] == doctest::Approx(-50.0).epsilon(0.10));
}

TEST_CASE("asymptotic coefficient formula against the paper constants") {
  // log h_n for (1-t)^-1: 2 sqrt(n) - (3/4) log n - log sqrt(4 pi) + o(1)
  WeightModel m = WeightModel::algebraic(1.0, 1.0);
  for (double n : {1e4, 1e6}) {
    const double v = asymptotic_log_coefficient(m, n, 0.0);
    const double leading = 2.0 * std::sqrt(n) - 0.75 * std::log(n) -
                           0.5 * std::log(4.0 * std::numbers::pi);
    CHECK(std::fabs(v - leading) < 2.0);  // bounded correction, not a tolerance
  }
}

TEST_CASE("asymptotic moments for the simple algebraic family") {
  AsymptoticMoments am =
      asymptotic_moments(WeightModel::algebraic(1.0, 1.0), 1e4);
  CHECK(am.sigma2_valid);
  CHECK(am.mu == doctest::Approx(100.0).epsilon(0.05));
  CHECK(am.sigma2 == doctest::Approx(50.0).epsilon(0.05));
  CHECK(am.xi >= am.mu);
}

TEST_CASE("degenerate variance is flagged, not thrown") {
  // theta = [c]: every cycle has length 1 and K = n exactly. The ceiling
  // a(1) = c must stay above the xi grid endpoint e * n.
  AsymptoticMoments am =
      asymptotic_moments(WeightModel::explicit_list({10.0}), 3.0);
  CHECK(std::fabs(am.sigma2) < 1e-9);
  if (!am.sigma2_valid) CHECK(am.note.find("not yet valid") != std::string::npos);
}

TEST_CASE("closed forms: algebraic") {
  AsymptoticMoments c = closed_form_algebraic(1.0, 1.0, 1e4);
  CHECK(c.mu == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(c.sigma2 == doctest::Approx(50.0).epsilon(1e-12));
  // mu / n^{2/3} for beta = 2, gamma = 1 is 2^{-2/3}
  AsymptoticMoments c2 = closed_form_algebraic(2.0, 1.0, 1e9);
  CHECK(c2.mu / std::pow(1e9, 2.0 / 3.0) ==
        doctest::Approx(std::pow(2.0, -2.0 / 3.0)).epsilon(1e-12));
  // generic numeric path is the oracle for the constants
  for (auto [beta, gamma] : std::vector<std::pair<double, double>>{
           {0.5, 1.0}, {1.0, 2.0}}) {
    AsymptoticMoments gen =
        asymptotic_moments(WeightModel::algebraic(beta, gamma), 1e6);
    AsymptoticMoments clo = closed_form_algebraic(beta, gamma, 1e6);
    CHECK(gen.mu / clo.mu == doctest::Approx(1.0).epsilon(0.05));
    CHECK(gen.sigma2 / clo.sigma2 == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("closed forms: sub-exponential") {
  // sigma^2 / mu = (2 + 1/beta) / log n by construction; check at e^100
  SubexpMoments s = closed_form_subexp(1.0, std::exp(100.0));
  CHECK(s.leading.sigma2 / s.leading.mu ==
        doctest::Approx(3.0 / 100.0).epsilon(1e-12));
  const double n = 1e6, ln = std::log(n), lln = std::log(ln);
  SubexpMoments t = closed_form_subexp(1.0, n);
  CHECK(t.g_refined / t.leading.mu ==
        doctest::Approx(1.0 + 1.0 / ln + 2.0 * lln / ln).epsilon(1e-12));
  CHECK(t.n_eta1_refined / t.leading.mu ==
        doctest::Approx(-(1.0 + 1.0 / ln - 2.0 / ln)).epsilon(1e-12));
  CHECK_THROWS_AS(closed_form_subexp(1.0, 2.0), std::domain_error);
  // generic numeric path approaches the leading form from above
  std::vector<double> ratio;
  for (double nn : {1e4, 1e5, 1e6}) {
    AsymptoticMoments gen =
        asymptotic_moments(WeightModel::subexponential(1.0), nn);
    ratio.push_back(gen.mu * std::pow(std::log(nn), 2.0) / nn);
  }
  CHECK(ratio[0] > ratio[1]);
  CHECK(ratio[1] > ratio[2]);
  CHECK(ratio[2] > 1.0);
}

TEST_CASE("remainder quadrature matches the direct difference where stable") {
  // moderate radius: the direct evaluation still has ~10 good digits
  for (const auto& m :
       {WeightModel::algebraic(1.0, 1.0), WeightModel::ewens(1.0)}) {
    const double r = 0.7, phi = 0.02;
    DerivBundle d = m.eval_derivs(r);
    std::complex<double> direct =
        m.eval_g(std::polar(r, phi)) - d.g -
        std::complex<double>(0.0, 1.0) * phi * m.a_of(r) +
        0.5 * phi * phi * m.b_of(r);
    // reconstruct R = phi^3 T(phi) by integrating the third derivative
    std::complex<double> t(0.0, 0.0);
    const int steps = 4000;
    for (int i = 0; i < steps; ++i) {
      double v = (i + 0.5) / steps;
      std::complex<double> d3 = m.eval_d3_circle(r, phi * v).value();
      t += 0.5 * (1.0 - v) * (1.0 - v) * std::complex<double>(0.0, -1.0) *
           d3 / static_cast<double>(steps);
    }
    std::complex<double> reconstructed = phi * phi * phi * t;
    // midpoint rule with 4000 panels: ~1e-8 relative quadrature error
    CHECK(std::abs(reconstructed - direct) < 1e-7 * std::abs(direct) + 1e-15);
  }
}

TEST_CASE("admissibility verdicts for the canonical families") {
  DeltaSpec p14{DeltaSpec::Form::kPower, 1.4, 0.0};
  DeltaSpec e04{DeltaSpec::Form::kExpDecay, 0.4, 0.0};

  AdmissibilityReport alg =
      check_admissibility(WeightModel::algebraic(1.0, 1.0), p14);
  CHECK(alg.overall);

  AdmissibilityReport sub =
      check_admissibility(WeightModel::subexponential(1.0), e04);
  CHECK(sub.overall);

  AdmissibilityReport ew = check_admissibility(WeightModel::ewens(1.0), p14);
  CHECK_FALSE(ew.width.pass);
  CHECK(ew.divergence.pass);
  CHECK(ew.monotonicity.pass);
  CHECK_FALSE(ew.overall);

  // a too-narrow power also sinks the width condition for the algebraic
  // family (delta^2 b -> 0 needs 2 alpha > beta + 2)
  DeltaSpec p25{DeltaSpec::Form::kPower, 2.5, 0.0};
  CHECK_FALSE(
      check_admissibility(WeightModel::algebraic(1.0, 1.0), p25).width.pass);
}

TEST_CASE("known_non_admissible flags ewens only") {
  CHECK(known_non_admissible(WeightModel::ewens(1.0)));
  CHECK_FALSE(known_non_admissible(WeightModel::algebraic(1.0, 1.0)));
  CHECK_FALSE(known_non_admissible(WeightModel::subexponential(1.0)));
}

TEST_CASE("technical condition") {
  CHECK(check_technical_condition(WeightModel::algebraic(1.0, 1.0)).pass);
  CHECK(check_technical_condition(WeightModel::algebraic(2.0, 1.0)).pass);
  CHECK(check_technical_condition(WeightModel::subexponential(1.0)).pass);
  TechnicalConditionReport bounded =
      check_technical_condition(WeightModel::explicit_list({1.0, 2.0, 3.0}));
  CHECK_FALSE(bounded.applicable);
}

TEST_CASE("large deviation estimate") {
  WeightModel m = WeightModel::algebraic(1.0, 1.0);
  LargeDeviationEstimate zero = large_deviation_estimate(m, 1e4, 0.0, 3.0);
  CHECK(zero.estimate == doctest::Approx(1.0));
  CHECK(zero.tilt_s == 0.0);
  CHECK(zero.prefactor == doctest::Approx(1.0 - 1.0 / 9.0));

  CHECK_THROWS_AS(large_deviation_estimate(m, 1e4, 1.0, 0.5),
                  std::domain_error);

  LargeDeviationEstimate est = large_deviation_estimate(m, 1e4, 1.0, 3.0);
  CHECK(est.estimate == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(est.regime_valid);
  CHECK(est.tilt_s == doctest::Approx(1.0).epsilon(0.25));

  // the diagnostic scale shrinks like n^{-1/4} for this family
  std::vector<double> scales;
  for (double n : {1e2, 1e3, 1e4})
    scales.push_back(large_deviation_estimate(m, n, 2.0, 3.0).delta_scale);
  CHECK(scales[0] > scales[1]);
  CHECK(scales[1] > scales[2]);
  CHECK(scales[1] / scales[0] ==
        doctest::Approx(std::pow(10.0, -0.25)).epsilon(0.35));

  // far outside the regime the diagnostic flips
  CHECK_FALSE(large_deviation_estimate(m, 100.0, 40.0, 3.0).regime_valid);
}

TEST_CASE("delta spec forms") {
  DeltaSpec p{DeltaSpec::Form::kPower, 1.4, 0.0};
  CHECK(p.log_delta(0.9, 1.0, 1.0) ==
        doctest::Approx(1.4 * std::log(0.1)).epsilon(1e-13));
  DeltaSpec e{DeltaSpec::Form::kExpDecay, 0.4, 0.0};
  CHECK(e.log_delta(0.9, 1.0, 1.0) == doctest::Approx(-4.0).epsilon(1e-13));
  CHECK(e.log_delta(0.9, 1.0, 2.0) == doctest::Approx(-40.0).epsilon(1e-12));
  CHECK(p.describe().find("power") != std::string::npos);
}
