#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <complex>
#include <vector>

#include "permcycles/log_space.hpp"
#include "permcycles/weights.hpp"

using namespace permcycles;

namespace {

WeightModel theta_k_equals_k(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t k = 1; k <= n; ++k) t[k - 1] = static_cast<double>(k);
  return WeightModel::explicit_list(std::move(t));
}

std::vector<WeightModel> family_zoo() {
  return {WeightModel::ewens(1.0), WeightModel::ewens(2.0),
          WeightModel::algebraic(1.0, 1.0), WeightModel::algebraic(2.0, 1.5),
          WeightModel::algebraic(0.5, 1.0), WeightModel::subexponential(1.0),
          WeightModel::subexponential(2.0), theta_k_equals_k(64)};
}

}  // namespace

TEST_CASE("closed-form values of g") {
  CHECK(WeightModel::algebraic(1.0, 1.0).eval_g(0.5) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(WeightModel::ewens(1.0).eval_g(0.5) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(WeightModel::subexponential(1.0).eval_g(0.5) ==
        doctest::Approx(std::exp(2.0)).epsilon(1e-14));
}

TEST_CASE("truncated series tracks t/(1-t) for theta_k = k") {
  WeightModel m = theta_k_equals_k(50);
  // partial-sum oracle: sum_{k<=50} t^k at t = 1/2
  double oracle = 0.0, p = 1.0;
  for (int k = 1; k <= 50; ++k) {
    p *= 0.5;
    oracle += p;
  }
  CHECK(m.eval_g(0.5) == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(std::fabs(m.eval_g(0.5) - 1.0) < 1e-14 + m.truncation_tail_bound(0.5));
}

TEST_CASE("relative truncation error shrinks monotonically with order") {
  const double r = 0.5;
  const double exact = WeightModel::algebraic(1.0, 1.0).eval_g(r);
  double prev = 1.0;
  for (std::size_t n : {8u, 16u, 32u, 64u}) {
    std::vector<double> t(n);
    for (std::size_t k = 1; k <= n; ++k) t[k - 1] = static_cast<double>(k);
    double err =
        std::fabs(WeightModel::explicit_list(t).eval_g(r) - exact) / exact;
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("derivative bundles match closed forms") {
  DerivBundle d0 = WeightModel::algebraic(1.0, 1.0).eval_derivs(0.0);
  CHECK(d0.g == doctest::Approx(1.0));
  CHECK(d0.g1 == doctest::Approx(1.0));
  CHECK(d0.g2 == doctest::Approx(2.0));
  CHECK(d0.g3 == doctest::Approx(6.0));

  DerivBundle de = WeightModel::ewens(1.0).eval_derivs(0.5);
  CHECK(de.g == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(de.g1 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(de.g2 == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(de.g3 == doctest::Approx(16.0).epsilon(1e-14));

  // symbolic oracle for exp((1-r)^-1) at r = 1/2, v = 1/2:
  //   g  = e^2, g' = 4 e^2, g'' = (2 v^-3 + v^-4) e^2 = 32 e^2,
  //   g''' = (6 v^-4 + 6 v^-5 + v^-6) e^2 = 352 e^2
  DerivBundle ds = WeightModel::subexponential(1.0).eval_derivs(0.5);
  const double e2 = std::exp(2.0);
  CHECK(ds.g == doctest::Approx(e2).epsilon(1e-13));
  CHECK(ds.g1 == doctest::Approx(4.0 * e2).epsilon(1e-13));
  CHECK(ds.g2 == doctest::Approx(32.0 * e2).epsilon(1e-13));
  CHECK(ds.g3 == doctest::Approx(352.0 * e2).epsilon(1e-13));
}

TEST_CASE("derivatives agree with central differences") {
  for (const auto& m : family_zoo()) {
    for (double r : {0.05, 0.3, 0.6, 0.85}) {
      const double h = 1e-5 * (m.radius() - r);
      DerivBundle at = m.eval_derivs(r);
      DerivBundle up = m.eval_derivs(r + h);
      DerivBundle dn = m.eval_derivs(r - h);
      CHECK(at.g1 ==
            doctest::Approx((up.g - dn.g) / (2 * h)).epsilon(1e-6));
      CHECK(at.g2 ==
            doctest::Approx((up.g1 - dn.g1) / (2 * h)).epsilon(1e-6));
      CHECK(at.g3 ==
            doctest::Approx((up.g2 - dn.g2) / (2 * h)).epsilon(1e-6));
    }
  }
}

TEST_CASE("a and b are zero at 0 and strictly increasing") {
  for (const auto& m : family_zoo()) {
    CHECK(m.a_of(0.0) == 0.0);
    CHECK(m.b_of(0.0) == 0.0);
    double pa = 0.0, pb = 0.0;
    for (int i = 1; i <= 24; ++i) {
      double r = m.radius() * (0.97 * i / 24.0);
      double a = m.a_of(r), b = m.b_of(r);
      CHECK(a > pa);
      CHECK(b > pb);
      pa = a;
      pb = b;
    }
  }
}

TEST_CASE("saddle function values from the paper family") {
  CHECK(WeightModel::algebraic(1.0, 1.0).a_of(0.5) ==
        doctest::Approx(2.0).epsilon(1e-14));  // t/(1-t)^2 at 1/2
  CHECK(WeightModel::ewens(1.0).b_of(0.5) ==
        doctest::Approx(2.0).epsilon(1e-14));  // r/(1-r)^2 at 1/2
}

TEST_CASE("remainder scale") {
  WeightModel alg = WeightModel::algebraic(1.0, 1.0);
  CHECK(alg.remainder_scale(0.0) == 0.0);
  CHECK(alg.remainder_scale(0.9) == doctest::Approx(48690.0).epsilon(1e-12));
  // Ewens remainder grows like (1-r)^-3: the compensated ratio is flat.
  WeightModel ew = WeightModel::ewens(1.0);
  std::vector<double> compensated;
  for (double r : {0.9, 0.99, 0.999, 0.9999})
    compensated.push_back(ew.remainder_scale(r) * std::pow(1.0 - r, 3));
  for (std::size_t i = 1; i < compensated.size(); ++i)
    CHECK(compensated[i] ==
          doctest::Approx(compensated[0]).epsilon(0.15));
}

TEST_CASE("tilt scales weights by exp(-s)") {
  WeightModel ew = WeightModel::ewens(1.0).tilt(std::log(2.0));
  CHECK(ew.kind() == WeightKind::kEwens);
  CHECK(ew.theta0() == doctest::Approx(0.5).epsilon(1e-15));

  WeightModel ex = WeightModel::explicit_list({1.0, 2.0, 3.0});
  WeightModel scaled = ex.tilt(-std::log(3.0));
  REQUIRE(scaled.kind() == WeightKind::kExplicit);
  CHECK(scaled.explicit_thetas()[0] == doctest::Approx(3.0));
  CHECK(scaled.explicit_thetas()[1] == doctest::Approx(6.0));
  CHECK(scaled.explicit_thetas()[2] == doctest::Approx(9.0));

  for (const auto& m : family_zoo()) {
    WeightModel same = m.tilt(0.0);
    WeightModel half = m.tilt(std::log(2.0));
    for (double r : {0.0, 0.2, 0.4, 0.6}) {
      const double base = m.eval_g(r) - m.series_constant();
      CHECK(same.eval_g(r) - same.series_constant() ==
            doctest::Approx(base).epsilon(1e-12));
      CHECK(half.eval_g(r) - half.series_constant() ==
            doctest::Approx(0.5 * base).epsilon(1e-12));
    }
  }
}

TEST_CASE("series coefficients") {
  WeightModel alg = WeightModel::algebraic(1.0, 1.0);
  for (std::int64_t k : {1, 2, 5, 50})
    CHECK(alg.theta(k) == doctest::Approx(double(k)).epsilon(1e-12));
  // exp((1-t)^-1) = e (1 + t + 3/2 t^2 + ...), so theta_1 = e, theta_2 = 3e.
  WeightModel sub = WeightModel::subexponential(1.0);
  CHECK(sub.theta(1) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  CHECK(sub.theta(2) == doctest::Approx(3.0 * std::exp(1.0)).epsilon(1e-12));
  CHECK(WeightModel::ewens(2.0).theta(7) == doctest::Approx(2.0));
}

TEST_CASE("explicit list with a constant tail behaves like Ewens") {
  WeightModel mix =
      WeightModel::explicit_list({1.0, 1.0, 1.0}, 1.0, ConstantTail{1.0});
  WeightModel ew = WeightModel::ewens(1.0);
  CHECK(mix.radius() == 1.0);
  for (double r : {0.1, 0.5, 0.9}) {
    CHECK(mix.eval_g(r) == doctest::Approx(ew.eval_g(r)).epsilon(1e-12));
    DerivBundle a = mix.eval_derivs(r), b = ew.eval_derivs(r);
    CHECK(a.g1 == doctest::Approx(b.g1).epsilon(1e-12));
    CHECK(a.g2 == doctest::Approx(b.g2).epsilon(1e-12));
    CHECK(a.g3 == doctest::Approx(b.g3).epsilon(1e-11));
  }
  CHECK(mix.theta(100) == doctest::Approx(1.0));
}

TEST_CASE("domain and overflow errors") {
  WeightModel alg = WeightModel::algebraic(1.0, 1.0);
  CHECK_THROWS_AS(alg.eval_g(1.0), std::domain_error);
  CHECK_THROWS_AS(alg.eval_g(-0.1), std::domain_error);
  CHECK_THROWS_AS(alg.eval_g(std::complex<double>(0.8, 0.7)),
                  std::domain_error);
  WeightModel sub = WeightModel::subexponential(1.0);
  CHECK_THROWS_AS(sub.eval_g(0.9999), std::overflow_error);
  CHECK(sub.eval_log_g(0.9999) == doctest::Approx(1e4).epsilon(1e-10));
  CHECK_THROWS_AS(WeightModel::ewens(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(WeightModel::explicit_list({1.0, -2.0}),
                  std::invalid_argument);
}

TEST_CASE("truncation tail bound formula") {
  WeightModel m = theta_k_equals_k(50);
  const double r = 0.9;
  CHECK(m.truncation_tail_bound(r) ==
        doctest::Approx(50.0 * std::pow(0.9, 50.0) / (50.0 * 0.1))
            .epsilon(1e-14));
  GEval e = m.eval_g_with_bound(r);
  CHECK(e.tail_bound == m.truncation_tail_bound(r));
  CHECK(WeightModel::algebraic(1.0, 1.0).truncation_tail_bound(r) == 0.0);
}

TEST_CASE("complex evaluation and the scaled circle forms agree") {
  for (const auto& m : family_zoo()) {
    for (double phi : {0.0, 0.3, 1.5, 3.0}) {
      const double r = 0.55;
      std::complex<double> direct = m.eval_g(std::polar(r, phi));
      ScaledComplex scaled = m.eval_g_circle(r, phi);
      CHECK(std::abs(scaled.value() - direct) < 1e-10 * (1.0 + std::abs(direct)));
    }
    // conjugate symmetry from nonnegative coefficients
    std::complex<double> up = m.eval_g(std::polar(0.4, 0.7));
    std::complex<double> dn = m.eval_g(std::polar(0.4, -0.7));
    CHECK(up.real() == doctest::Approx(dn.real()).epsilon(1e-13));
    CHECK(up.imag() == doctest::Approx(-dn.imag()).epsilon(1e-13));
  }
}

TEST_CASE("third circle derivative at phi = 0 equals the remainder scale") {
  for (const auto& m : family_zoo()) {
    const double r = 0.7;
    ScaledComplex d3 = m.eval_d3_circle(r, 0.0);
    const double val = std::abs(d3.value());
    CHECK(val == doctest::Approx(m.remainder_scale(r)).epsilon(1e-10));
    CHECK(std::fabs(d3.value().imag()) < 1e-10 * val);
  }
}

TEST_CASE("json descriptors round trip and reject junk") {
  auto round_trip = [](const WeightModel& m) {
    WeightModel back = model_from_json(model_to_json(m));
    CHECK(back.kind() == m.kind());
    for (double r : {0.1, 0.5})
      CHECK(back.eval_g(r) == doctest::Approx(m.eval_g(r)).epsilon(1e-14));
  };
  round_trip(WeightModel::ewens(1.5));
  round_trip(WeightModel::algebraic(2.0, 1.0));
  round_trip(WeightModel::subexponential(1.0));
  round_trip(WeightModel::explicit_list({1.0, 2.0, 3.0}, 0.75));

  CHECK(model_from_json(R"({"kind":"algebraic","beta":2.0,"gamma":1.0})")
            .beta() == 2.0);
  CHECK_THROWS_AS(model_from_json(R"({"kind":"nope"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      model_from_json(R"({"kind":"ewens","theta":1.0,"extra":3})"),
      std::invalid_argument);
  CHECK_THROWS_AS(model_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(model_from_json(R"({"kind":"subexp","beta":-1.0})"),
                  std::invalid_argument);
}
