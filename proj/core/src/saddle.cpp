#include "permcycles/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>

#include "permcycles/log_space.hpp"

namespace permcycles {

namespace {

constexpr double kResidualTarget = 1e-13;
constexpr double kResidualLimit = 1e-12;

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr int kGlOrder = 16;
constexpr double kGlNode[kGlOrder / 2] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGlWeight[kGlOrder / 2] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

struct LogAB {
  double log_a;
  double log_b;
};

LogAB log_ab(const WeightModel& model, double r) {
  LogDerivBundle d = model.eval_log_derivs(r);
  const double log_r = std::log(r);
  return {log_r + d.log_g1,
          log_r + log_add(d.log_g1, log_r + d.log_g2)};
}

}  // namespace

double solve_saddle_radius(const WeightModel& model, double x) {
  if (!(x > 0.0)) throw std::domain_error("solve_saddle: x must be positive");
  const double rho = model.radius();
  const double log_x = std::log(x);

  double hi = rho * (1.0 - 1e-14);
  double f_hi = model.log_a(hi) - log_x;
  if (!(f_hi > 0.0))
    throw std::domain_error(
        "solve_saddle: a(r) never reaches x on (0, rho); the generating "
        "function does not diverge fast enough for this target (model " +
        model.describe() + ")");

  double lo = 0.5 * rho;
  double f_lo = model.log_a(lo) - log_x;
  while (f_lo > 0.0) {
    lo *= 0.5;
    if (lo < 1e-300)
      throw std::runtime_error("solve_saddle: bracket collapse at r -> 0");
    f_lo = model.log_a(lo) - log_x;
  }
  if (f_lo == 0.0) return lo;

  // Safeguarded Newton on F(r) = log a(r) - log x, with bisection whenever
  // the Newton step leaves the bracket or stalls.
  double xl = lo, xh = hi;
  double rts = 0.5 * (lo + hi);
  double dxold = xh - xl;
  double dx = dxold;
  LogAB ab = log_ab(model, rts);
  double f = ab.log_a - log_x;
  double best_r = rts, best_f = std::fabs(f), df = 0.0;
  for (int it = 0; it < 240; ++it) {
    df = std::exp(ab.log_b - ab.log_a) / rts;
    const bool newton_bad =
        (((rts - xh) * df - f) * ((rts - xl) * df - f) > 0.0) ||
        (std::fabs(2.0 * f) > std::fabs(dxold * df));
    dxold = dx;
    if (newton_bad || !std::isfinite(df)) {
      dx = 0.5 * (xh - xl);
      rts = xl + dx;
      if (rts == xl) break;
    } else {
      dx = f / df;
      double prev = rts;
      rts -= dx;
      if (prev == rts) break;
    }
    ab = log_ab(model, rts);
    f = ab.log_a - log_x;
    if (std::fabs(f) < best_f) {
      best_f = std::fabs(f);
      best_r = rts;
    }
    if (std::fabs(f) <= kResidualTarget) break;
    if (f < 0.0)
      xl = rts;
    else
      xh = rts;
  }
  // Steep a(r) (Ewens-like models at large x) can leave the nearest
  // representable r with a residual above 1e-12; accept down to the
  // resolution floor F'(r) * ulp(r) and report the achieved value.
  const double ulp = std::nextafter(best_r, 2.0) - best_r;
  const double floor_res =
      std::isfinite(df) ? 8.0 * std::fabs(df) * ulp : kResidualLimit;
  if (std::fabs(std::expm1(best_f)) > std::max(kResidualLimit, floor_res))
    throw std::runtime_error(
        "solve_saddle: could not reach the 1e-12 relative residual");
  return best_r;
}

namespace {

// log r_{exp(s) x} with memoization over the stencil offsets.
class LogRadiusStencil {
 public:
  LogRadiusStencil(const WeightModel& model, double x)
      : model_(model), x_(x) {}

  double operator()(double s) {
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    double v = std::log(solve_saddle_radius(model_, x_ * std::exp(s)));
    cache_.emplace(s, v);
    return v;
  }

 private:
  const WeightModel& model_;
  double x_;
  std::map<double, double> cache_;
};

}  // namespace

EtaDerivatives eta_derivatives(const WeightModel& model, double x,
                               int k_max) {
  if (k_max < 1 || k_max > 4)
    throw std::domain_error("eta_derivatives: k_max must be in 1..4");
  LogRadiusStencil phi(model, x);
  const double phi0 = phi(0.0);

  auto richardson = [](double coarse, double fine) {
    return (4.0 * fine - coarse) / 3.0;
  };

  EtaDerivatives out;
  {
    const double r = solve_saddle_radius(model, x);
    LogAB ab = log_ab(model, r);
    out.eta1_closed = -x / std::exp(ab.log_b);
  }

  // First and second derivative share the h = 1e-3 stencil.
  {
    const double h = 1e-3;
    auto d1 = [&](double hh) { return (phi(hh) - phi(-hh)) / (2.0 * hh); };
    auto d2 = [&](double hh) {
      return (phi(hh) - 2.0 * phi0 + phi(-hh)) / (hh * hh);
    };
    out.eta[0] = -richardson(d1(h), d1(0.5 * h));
    if (k_max >= 2) out.eta[1] = richardson(d2(h), d2(0.5 * h));
  }
  // The higher stencils divide by h^3 and h^4; with solver noise near
  // 1e-13 on log r they need wider steps to stay above roundoff.
  if (k_max >= 3) {
    const double h = 1e-2;
    auto d3 = [&](double hh) {
      return (phi(2.0 * hh) - 2.0 * phi(hh) + 2.0 * phi(-hh) -
              phi(-2.0 * hh)) /
             (2.0 * hh * hh * hh);
    };
    out.eta[2] = -richardson(d3(h), d3(0.5 * h));
  }
  if (k_max >= 4) {
    const double h = 5e-2;
    auto d4 = [&](double hh) {
      return (phi(2.0 * hh) - 4.0 * phi(hh) + 6.0 * phi0 - 4.0 * phi(-hh) +
              phi(-2.0 * hh)) /
             (hh * hh * hh * hh);
    };
    out.eta[3] = richardson(d4(h), d4(0.5 * h));
  }
  return out;
}

SaddlePoint solve_saddle(const WeightModel& model, double x) {
  SaddlePoint sp;
  sp.x = x;
  sp.r = solve_saddle_radius(model, x);
  LogDerivBundle d = model.eval_log_derivs(sp.r);
  LogAB ab = log_ab(model, sp.r);
  sp.log_g = d.log_g;
  sp.log_b = ab.log_b;
  sp.g = std::exp(sp.log_g);
  sp.b = std::exp(sp.log_b);
  sp.residual = std::fabs(std::expm1(ab.log_a - std::log(x)));
  EtaDerivatives eta = eta_derivatives(model, x, 4);
  sp.eta = eta.eta;
  sp.eta1_fd = eta.eta[0];
  sp.eta[0] = eta.eta1_closed;
  return sp;
}

double asymptotic_log_coefficient(const WeightModel& model, double n,
                                  double s) {
  const double x = std::exp(s) * n;
  const double r = solve_saddle_radius(model, x);
  LogDerivBundle d = model.eval_log_derivs(r);
  LogAB ab = log_ab(model, r);
  return -0.5 * std::log(2.0 * std::numbers::pi) + 0.5 * s -
         n * std::log(r) - 0.5 * ab.log_b + std::exp(d.log_g - s);
}

AsymptoticMoments asymptotic_moments(const WeightModel& model, double n,
                                     double big_m) {
  if (!(n > 0.0))
    throw std::domain_error("asymptotic_moments: n must be positive");
  AsymptoticMoments out;
  out.n = n;

  const double r = solve_saddle_radius(model, n);
  LogDerivBundle d = model.eval_log_derivs(r);
  LogAB ab = log_ab(model, r);
  out.mu = std::exp(d.log_g);
  // sigma^2 = g(r_n) + n eta_1(n) with eta_1 = -n / b(r_n)
  out.sigma2 = out.mu - std::exp(2.0 * std::log(n) - ab.log_b);
  out.sigma2_valid = out.sigma2 > 0.0;
  if (!out.sigma2_valid) out.note = "asymptotics not yet valid at this n";

  // xi = sup of g(r_x) + x |eta_1(x)| over [e^-M n, e^M n], 9-point grid.
  double xi = 0.0;
  for (int i = 0; i < 9; ++i) {
    const double s = -big_m + 2.0 * big_m * static_cast<double>(i) / 8.0;
    const double x = n * std::exp(s);
    const double rx = solve_saddle_radius(model, x);
    LogDerivBundle dx = model.eval_log_derivs(rx);
    LogAB abx = log_ab(model, rx);
    const double val =
        std::exp(dx.log_g) + std::exp(2.0 * std::log(x) - abx.log_b);
    xi = std::max(xi, val);
  }
  out.xi = xi;
  return out;
}

AsymptoticMoments closed_form_algebraic(double beta, double gamma, double n) {
  if (!(beta > 0.0) || !(gamma > 0.0) || !(n > 0.0))
    throw std::domain_error("closed_form_algebraic: bad arguments");
  AsymptoticMoments out;
  out.n = n;
  const double p = beta / (beta + 1.0);
  const double bg = beta * gamma;
  // mu = g(r_n) = gamma (n/(beta gamma))^p; the extra gamma factor matters
  // for gamma != 1.
  auto mu_at = [&](double x) { return gamma * std::pow(x / bg, p); };
  auto neta1_at = [&](double x) {
    return std::pow(bg, 1.0 / (beta + 1.0)) / (beta + 1.0) * std::pow(x, p);
  };
  out.mu = mu_at(n);
  out.sigma2 = (1.0 / beta - 1.0 / (beta + 1.0)) *
               std::pow(bg, 1.0 / (beta + 1.0)) * std::pow(n, p);
  out.sigma2_valid = out.sigma2 > 0.0;
  const double x_hi = std::exp(1.0) * n;
  out.xi = mu_at(x_hi) + neta1_at(x_hi);
  return out;
}

SubexpMoments closed_form_subexp(double beta, double n) {
  if (!(beta > 0.0))
    throw std::domain_error("closed_form_subexp: beta must be positive");
  if (!(n >= 3.0))
    throw std::domain_error("closed_form_subexp: n must be at least 3");
  SubexpMoments out;
  const double ln = std::log(n);
  const double lln = std::log(ln);
  auto lead = [&](double x) {
    return x / std::pow(std::log(x), 1.0 + 1.0 / beta);
  };
  out.leading.n = n;
  out.leading.mu = lead(n);
  out.leading.sigma2 =
      (2.0 + 1.0 / beta) * n / std::pow(ln, 2.0 + 1.0 / beta);
  out.leading.sigma2_valid = true;
  out.leading.xi = 2.0 * lead(std::exp(1.0) * n);
  out.g_refined = out.leading.mu *
                  (1.0 + std::pow(ln, -1.0 / beta) +
                   (1.0 + 1.0 / beta) * lln / ln);
  out.n_eta1_refined = -out.leading.mu *
                       (1.0 + std::pow(ln, -1.0 / beta) -
                        (1.0 + 1.0 / beta) / ln);
  return out;
}

double DeltaSpec::log_delta(double r, double rho,
                            double fallback_exponent) const {
  const double v = 1.0 - r / rho;
  if (form == Form::kPower) return alpha * std::log(v);
  const double e = exponent > 0.0 ? exponent : fallback_exponent;
  return -alpha * std::pow(v, -e);
}

std::string DeltaSpec::describe() const {
  if (form == Form::kPower)
    return "power(alpha=" + std::to_string(alpha) + ")";
  return "exp_decay(alpha=" + std::to_string(alpha) +
         ", exponent=" + std::to_string(exponent) + ")";
}

namespace {

double model_delta_exponent(const WeightModel& model) {
  switch (model.kind()) {
    case WeightKind::kAlgebraic:
    case WeightKind::kSubexponential:
      return model.beta();
    default:
      return 1.0;
  }
}

// Re of a scaled complex, relative to a reference log scale.
double scaled_real(const ScaledComplex& v, double log_ref) {
  return v.mantissa.real() * std::exp(v.log_scale - log_ref);
}

// |R(r, phi)| / phi^3 in log scale by Gauss-Legendre quadrature of the
// integral remainder (phi^3 T(phi), T = int_0^1 (1-v)^2/2 * (-i)
// D3(r e^{i phi v}) dv). Free of the cancellation that plagues evaluating
// g(re^{i phi}) - g(r) - i phi a + phi^2 b / 2 directly.
double log_remainder_over_phi3(const WeightModel& model, double r,
                               double phi) {
  ScaledComplex ref = model.eval_d3_circle(r, 0.0);
  const double log_ref = ref.log_scale + std::log(std::abs(ref.mantissa));
  std::complex<double> t(0.0, 0.0);
  for (int i = 0; i < kGlOrder / 2; ++i) {
    for (double sign : {-1.0, 1.0}) {
      const double v = 0.5 * (1.0 + sign * kGlNode[i]);
      const double w = 0.5 * kGlWeight[i];
      ScaledComplex d3 = model.eval_d3_circle(r, phi * v);
      std::complex<double> scaled =
          d3.mantissa * std::exp(d3.log_scale - log_ref);
      t += w * 0.5 * (1.0 - v) * (1.0 - v) *
           std::complex<double>(0.0, -1.0) * scaled;
    }
  }
  return std::log(std::abs(t)) + log_ref;
}

bool strictly_increasing(const std::vector<double>& v, std::size_t from) {
  for (std::size_t i = from + 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return v.size() > from + 1;
}

}  // namespace

AdmissibilityReport check_admissibility(const WeightModel& model,
                                        const DeltaSpec& delta,
                                        std::vector<double> r_grid,
                                        std::vector<double> phi_grid) {
  const double rho = model.radius();
  if (r_grid.empty())
    for (int j = 4; j <= 20; ++j)
      r_grid.push_back(rho * (1.0 - std::pow(2.0, -j)));
  if (phi_grid.empty()) {
    // geometric coverage of (0, pi]: delta can be many decades below 1
    const int points = 48;
    for (int i = 0; i < points; ++i)
      phi_grid.push_back(std::numbers::pi *
                         std::pow(10.0, -8.0 * (points - 1 - i) / (points - 1)));
  }
  std::sort(r_grid.begin(), r_grid.end());
  const double fallback_exp = model_delta_exponent(model);

  AdmissibilityReport rep;
  rep.delta = delta;

  // Shared per-r quantities.
  std::vector<double> log_as, log_bs, log_deltas;
  for (double r : r_grid) {
    log_as.push_back(model.log_a(r));
    log_bs.push_back(model.log_b(r));
    log_deltas.push_back(delta.log_delta(r, rho, fallback_exp));
  }

  // --- divergence: a, b up, delta down ---
  {
    ConditionReport c;
    c.name = "divergence";
    c.r = r_grid;
    c.margin.assign(r_grid.size(), 0.0);
    bool ok = true;
    for (std::size_t i = 1; i < r_grid.size(); ++i) {
      double m = std::min({log_as[i] - log_as[i - 1],
                           log_bs[i] - log_bs[i - 1],
                           log_deltas[i - 1] - log_deltas[i]});
      c.margin[i] = m;
      if (!(m > 0.0)) ok = false;
    }
    c.pass = ok && r_grid.size() >= 2;
    rep.divergence = std::move(c);
  }

  // --- width: growth rate of log(delta^2 b) along the geometric grid ---
  {
    ConditionReport c;
    c.name = "width";
    c.r = r_grid;
    std::vector<double> s(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i)
      s[i] = 2.0 * log_deltas[i] + log_bs[i];
    c.margin.assign(r_grid.size(), 0.0);
    for (std::size_t i = 1; i < r_grid.size(); ++i)
      c.margin[i] = s[i] - s[i - 1];
    const std::size_t tail = r_grid.size() / 2;
    c.pass = strictly_increasing(s, tail);
    // Record the literal eps delta^2 b - log b endpoints for the report.
    auto w_of = [&](double eps, std::size_t i) {
      double d2b = std::exp(s[i]);
      return eps * d2b - log_bs[i];
    };
    if (!r_grid.empty()) {
      c.note = "W(eps=0.1) first/last: " +
               std::to_string(w_of(0.1, 0)) + " / " +
               std::to_string(w_of(0.1, r_grid.size() - 1)) +
               "; W(eps=1) first/last: " + std::to_string(w_of(1.0, 0)) +
               " / " + std::to_string(w_of(1.0, r_grid.size() - 1)) +
               "; verdict from the growth rate of log(delta^2 b)";
    }
    rep.width = std::move(c);
  }

  // --- approximation: c(r) = max |R| (delta/phi)^3 shrinking along r ---
  {
    ConditionReport c;
    c.name = "approximation";
    std::vector<double> log_c;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
      const double dval = std::exp(log_deltas[i]);
      if (!(dval > 0.0) || dval > 0.5) continue;  // window degenerate
      double worst = kLogZero;
      for (double frac : {0.25, 0.5, 0.75, 1.0}) {
        double lt = log_remainder_over_phi3(model, r_grid[i], frac * dval);
        worst = std::max(worst, lt);
      }
      c.r.push_back(r_grid[i]);
      log_c.push_back(worst + 3.0 * log_deltas[i]);
    }
    c.margin.assign(log_c.size(), 0.0);
    for (std::size_t i = 1; i < log_c.size(); ++i)
      c.margin[i] = log_c[i - 1] - log_c[i];  // positive = shrinking
    if (log_c.size() >= 4) {
      const std::size_t tail = log_c.size() / 2;
      bool shrinking = true;
      for (std::size_t i = tail + 1; i < log_c.size(); ++i)
        if (!(log_c[i] < log_c[i - 1])) shrinking = false;
      c.pass = shrinking && log_c.back() < log_c.front();
    } else {
      c.pass = false;
      c.note = "too few radii with a representable window";
    }
    rep.approximation = std::move(c);
  }

  // --- monotonicity: Re g(r e^{i phi}) <= Re g(r e^{i delta}) for
  //     phi beyond delta ---
  {
    ConditionReport c;
    c.name = "monotonicity";
    c.r = r_grid;
    c.margin.assign(r_grid.size(), 0.0);
    bool ok = true;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
      const double r = r_grid[i];
      const double dval = std::exp(log_deltas[i]);
      ScaledComplex at_center = model.eval_g_circle(r, 0.0);
      const double log_ref =
          at_center.log_scale +
          std::log(std::max(std::abs(at_center.mantissa), 1e-300));
      ScaledComplex at_delta = model.eval_g_circle(r, dval);
      const double re_delta = scaled_real(at_delta, log_ref);
      double excess = -std::numeric_limits<double>::infinity();
      auto consider = [&](double phi) {
        if (!(phi > dval) || phi > std::numbers::pi) return;
        ScaledComplex gv = model.eval_g_circle(r, phi);
        excess = std::max(excess, scaled_real(gv, log_ref) - re_delta);
      };
      for (double phi : phi_grid) consider(phi);
      for (double mult : {1.5, 2.0, 4.0, 8.0}) consider(mult * dval);
      c.margin[i] = excess;  // normalized by |g(r)|; <= 0 means pass
      if (excess > 1e-10) ok = false;
    }
    c.pass = ok;
    rep.monotonicity = std::move(c);
  }

  rep.overall = rep.approximation.pass && rep.divergence.pass &&
                rep.width.pass && rep.monotonicity.pass;
  return rep;
}

TechnicalConditionReport check_technical_condition(
    const WeightModel& model, std::vector<double> x_grid) {
  if (x_grid.empty())
    for (int i = 0; i <= 16; ++i)
      x_grid.push_back(std::pow(10.0, 2.0 + 0.25 * i));

  TechnicalConditionReport rep;
  rep.x = x_grid;
  rep.max_ratio = {0.0, 0.0, 0.0};
  try {
    for (double x : x_grid) {
      const double h = 0.05 * x;
      const double rm2 = solve_saddle_radius(model, x - 2.0 * h);
      const double rm1 = solve_saddle_radius(model, x - h);
      const double r0 = solve_saddle_radius(model, x);
      const double rp1 = solve_saddle_radius(model, x + h);
      const double rp2 = solve_saddle_radius(model, x + 2.0 * h);

      const double d1 = (rp1 - rm1) / (2.0 * h);
      const double d2 = (rp1 - 2.0 * r0 + rm1) / (h * h);
      const double d3 =
          (rp2 - 2.0 * rp1 + 2.0 * rm1 - rm2) / (2.0 * h * h * h);
      const double d4 =
          (rp2 - 4.0 * rp1 + 6.0 * r0 - 4.0 * rm1 + rm2) / (h * h * h * h);

      const double t1 = std::fabs(d1) * x;
      const double t2 = std::fabs(d2) * x * x;
      const double t3 = std::fabs(d3) * x * x * x;
      const double t4 = std::fabs(d4) * x * x * x * x;
      if (t1 > 0.0) rep.max_ratio[0] = std::max(rep.max_ratio[0], t2 / t1);
      if (t2 > 0.0) rep.max_ratio[1] = std::max(rep.max_ratio[1], t3 / t2);
      if (t3 > 0.0) rep.max_ratio[2] = std::max(rep.max_ratio[2], t4 / t3);
    }
  } catch (const std::domain_error& e) {
    rep.applicable = false;
    rep.pass = false;
    rep.note = std::string("not applicable: ") + e.what();
    return rep;
  }
  rep.pass = rep.max_ratio[0] <= 10.0 && rep.max_ratio[1] <= 10.0 &&
             rep.max_ratio[2] <= 10.0;
  return rep;
}

LargeDeviationEstimate large_deviation_estimate(const WeightModel& model,
                                                double n, double a,
                                                double epsilon) {
  if (!(epsilon > 1.0))
    throw std::domain_error(
        "large_deviation_estimate: epsilon must exceed 1 for the "
        "prefactor 1 - epsilon^-2 to be informative");
  if (a < 0.0)
    throw std::domain_error("large_deviation_estimate: a must be >= 0");

  LargeDeviationEstimate out;
  out.a = a;
  out.epsilon = epsilon;
  out.moments = asymptotic_moments(model, n);
  if (!out.moments.sigma2_valid)
    throw std::domain_error(
        "large_deviation_estimate: sigma^2 <= 0; asymptotics not yet valid");
  const double sigma = std::sqrt(out.moments.sigma2);
  out.estimate = std::exp(-0.5 * a * a);
  out.prefactor = 1.0 - 1.0 / (epsilon * epsilon);
  out.delta_scale = out.moments.xi * a / (sigma * sigma * sigma);
  out.regime_valid = out.delta_scale < 1.0;

  if (a == 0.0) {
    out.tilt_s = 0.0;
    return out;
  }

  // Lambda(s) = log E exp(s X_n) via the asymptotic coefficient formula;
  // solve Lambda'(s) = a by expanding a bracket and bisecting.
  const double mu = out.moments.mu;
  const double log_h = asymptotic_log_coefficient(model, n, 0.0);
  auto lambda = [&](double s) {
    return asymptotic_log_coefficient(model, n, -s / sigma) - log_h -
           s * mu / sigma;
  };
  const double fd_h = 1e-4 * (1.0 + a);
  auto dlambda = [&](double s) {
    return (lambda(s + fd_h) - lambda(s - fd_h)) / (2.0 * fd_h);
  };
  double lo = 0.0, hi = std::max(2.0 * a, 0.5);
  double f_hi = dlambda(hi) - a;
  int guard = 0;
  while (f_hi < 0.0 && guard++ < 40) {
    hi *= 2.0;
    f_hi = dlambda(hi) - a;
  }
  if (f_hi < 0.0)
    throw std::runtime_error(
        "large_deviation_estimate: could not bracket Lambda'(s) = a");
  for (int it = 0; it < 100; ++it) {
    double mid = 0.5 * (lo + hi);
    if (dlambda(mid) - a < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-10 * (1.0 + a)) break;
  }
  out.tilt_s = 0.5 * (lo + hi);
  return out;
}

bool known_non_admissible(const WeightModel& model) {
  return model.kind() == WeightKind::kEwens;
}

}  // namespace permcycles
