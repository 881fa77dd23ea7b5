#include "permcycles/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "permcycles/log_space.hpp"

namespace permcycles {

namespace {

constexpr double kOverflowLog = 709.0;

double require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::invalid_argument(std::string(name) + " must be positive");
  return x;
}

// log binomial(k + beta - 1, k): coefficients of (1-t)^(-beta).
double log_binom_coeff(double beta, std::int64_t k) {
  if (k == 0) return 0.0;
  return std::lgamma(static_cast<double>(k) + beta) - std::lgamma(beta) -
         std::lgamma(static_cast<double>(k) + 1.0);
}

// log coefficients E_1..E_n of exp((1-t)^(-beta)) by the exp-of-series
// convolution n E_n = sum_{j<=n} j u_j E_{n-j}, run in log space.
std::vector<double> subexp_log_coeffs(double beta, std::size_t n) {
  std::vector<double> log_ju(n + 1, kLogZero);  // log(j * u_j)
  for (std::size_t j = 1; j <= n; ++j)
    log_ju[j] = std::log(static_cast<double>(j)) +
                log_binom_coeff(beta, static_cast<std::int64_t>(j));
  std::vector<double> log_e(n + 1, kLogZero);
  log_e[0] = 0.0;  // coefficients of exp(U - u_0); rescaled by e below
  for (std::size_t m = 1; m <= n; ++m) {
    LogAccumulator acc;
    for (std::size_t j = 1; j <= m; ++j)
      acc.add(log_ju[j] + log_e[m - j]);
    log_e[m] = acc.value() - std::log(static_cast<double>(m));
  }
  for (std::size_t m = 0; m <= n; ++m) log_e[m] += 1.0;  // * e^{u_0}
  return log_e;
}

}  // namespace

WeightModel WeightModel::ewens(double theta0) {
  WeightModel m;
  m.kind_ = WeightKind::kEwens;
  m.theta0_ = require_positive(theta0, "theta0");
  m.radius_ = 1.0;
  return m;
}

WeightModel WeightModel::algebraic(double beta, double gamma) {
  WeightModel m;
  m.kind_ = WeightKind::kAlgebraic;
  m.beta_ = require_positive(beta, "beta");
  m.gamma_ = require_positive(gamma, "gamma");
  m.radius_ = 1.0;
  return m;
}

WeightModel WeightModel::subexponential(double beta) {
  WeightModel m;
  m.kind_ = WeightKind::kSubexponential;
  m.beta_ = require_positive(beta, "beta");
  m.radius_ = 1.0;
  return m;
}

WeightModel WeightModel::explicit_list(std::vector<double> theta,
                                       double radius,
                                       std::optional<ConstantTail> tail) {
  WeightModel m;
  m.kind_ = WeightKind::kExplicit;
  for (double t : theta)
    if (t < 0.0 || !std::isfinite(t))
      throw std::invalid_argument("explicit weights must be >= 0 and finite");
  if (tail) {
    if (tail->theta_inf < 0.0)
      throw std::invalid_argument("tail weight must be >= 0");
    m.radius_ = 1.0;  // constant tail behaves like an Ewens tail
  } else {
    m.radius_ = require_positive(radius, "radius");
  }
  m.tail_ = tail;
  m.theta_ = std::move(theta);
  m.log_theta_.resize(m.theta_.size());
  for (std::size_t i = 0; i < m.theta_.size(); ++i)
    m.log_theta_[i] = m.theta_[i] > 0.0 ? std::log(m.theta_[i]) : kLogZero;
  return m;
}

void WeightModel::check_real_domain(double r) const {
  if (!(r >= 0.0) || !(r < radius_))
    throw std::domain_error("argument outside [0, radius)");
}

std::complex<double> WeightModel::eval_g(std::complex<double> t) const {
  if (!(std::abs(t) < radius_))
    throw std::domain_error("|t| must be below the radius of convergence");
  const std::complex<double> one(1.0, 0.0);
  switch (kind_) {
    case WeightKind::kEwens:
      return -theta0_ * std::log(one - t);
    case WeightKind::kAlgebraic:
      return gamma_ * std::exp(-beta_ * std::log(one - t));
    case WeightKind::kSubexponential:
      return std::exp(std::exp(-beta_ * std::log(one - t)));
    case WeightKind::kExplicit: {
      std::complex<double> sum(0.0, 0.0);
      std::complex<double> p = one;
      for (std::size_t k = 1; k <= theta_.size(); ++k) {
        p *= t;
        sum += theta_[k - 1] * p / static_cast<double>(k);
      }
      if (tail_ && tail_->theta_inf > 0.0) {
        // theta_inf * (-log(1-t) - sum_{k<=m} t^k/k)
        std::complex<double> head(0.0, 0.0);
        std::complex<double> q = one;
        for (std::size_t k = 1; k <= theta_.size(); ++k) {
          q *= t;
          head += q / static_cast<double>(k);
        }
        sum += tail_->theta_inf * (-std::log(one - t) - head);
      }
      return sum;
    }
  }
  throw std::logic_error("unreachable");
}

GEval WeightModel::eval_g_with_bound(double r) const {
  check_real_domain(r);
  double lg = eval_log_g(r);
  GEval out;
  out.log_value = lg;
  out.value = lg > kOverflowLog
                  ? std::numeric_limits<double>::infinity()
                  : std::exp(lg);
  out.tail_bound = truncation_tail_bound(r);
  return out;
}

double WeightModel::eval_g(double r) const {
  GEval e = eval_g_with_bound(r);
  if (!std::isfinite(e.value))
    throw std::overflow_error("g overflows a double; use eval_log_g");
  return e.value;
}

double WeightModel::eval_log_g(double r) const {
  check_real_domain(r);
  switch (kind_) {
    case WeightKind::kEwens:
      return r == 0.0 ? kLogZero
                      : std::log(theta0_) + std::log(-std::log1p(-r));
    case WeightKind::kAlgebraic:
      return std::log(gamma_) - beta_ * std::log1p(-r);
    case WeightKind::kSubexponential:
      return std::exp(-beta_ * std::log1p(-r));
    case WeightKind::kExplicit: {
      LogAccumulator acc;
      const double log_r = r > 0.0 ? std::log(r) : kLogZero;
      for (std::size_t k = 1; k <= theta_.size(); ++k)
        acc.add(log_theta_[k - 1] + static_cast<double>(k) * log_r -
                std::log(static_cast<double>(k)));
      if (tail_ && tail_->theta_inf > 0.0 && r > 0.0) {
        double head = 0.0;
        double p = 1.0;
        for (std::size_t k = 1; k <= theta_.size(); ++k) {
          p *= r;
          head += p / static_cast<double>(k);
        }
        double tail_val = tail_->theta_inf * (-std::log1p(-r) - head);
        if (tail_val > 0.0) acc.add(std::log(tail_val));
      }
      return acc.value();
    }
  }
  throw std::logic_error("unreachable");
}

LogDerivBundle WeightModel::eval_log_derivs(double r) const {
  check_real_domain(r);
  LogDerivBundle b;
  b.log_g = eval_log_g(r);
  const double lv = std::log1p(-r);  // log(1 - r), valid for families with rho=1
  switch (kind_) {
    case WeightKind::kEwens: {
      const double lt = std::log(theta0_);
      b.log_g1 = lt - lv;
      b.log_g2 = lt - 2.0 * lv;
      b.log_g3 = lt + std::log(2.0) - 3.0 * lv;
      return b;
    }
    case WeightKind::kAlgebraic: {
      const double lg = std::log(gamma_);
      b.log_g1 = lg + std::log(beta_) - (beta_ + 1.0) * lv;
      b.log_g2 = lg + std::log(beta_ * (beta_ + 1.0)) - (beta_ + 2.0) * lv;
      b.log_g3 =
          lg + std::log(beta_ * (beta_ + 1.0) * (beta_ + 2.0)) -
          (beta_ + 3.0) * lv;
      return b;
    }
    case WeightKind::kSubexponential: {
      // u = (1-r)^(-beta); g' = beta (1-r)^(-beta-1) e^u, and the higher
      // derivatives stack powers of (1-r)^(-beta-k) and (1-r)^(-2beta-k).
      const double u = std::exp(-beta_ * lv);
      const double lb = std::log(beta_);
      b.log_g1 = lb - (beta_ + 1.0) * lv + u;
      b.log_g2 =
          log_add(std::log(beta_ * (beta_ + 1.0)) - (beta_ + 2.0) * lv,
                  2.0 * lb - (2.0 * beta_ + 2.0) * lv) +
          u;
      LogAccumulator g3;
      g3.add(std::log(beta_ * (beta_ + 1.0) * (beta_ + 2.0)) -
             (beta_ + 3.0) * lv);
      g3.add(std::log(3.0 * beta_ * beta_ * (beta_ + 1.0)) -
             (2.0 * beta_ + 3.0) * lv);
      g3.add(3.0 * lb - (3.0 * beta_ + 3.0) * lv);
      b.log_g3 = g3.value() + u;
      return b;
    }
    case WeightKind::kExplicit: {
      if (r == 0.0) {
        auto nth = [&](std::size_t k) {
          if (k <= theta_.size()) return log_theta_[k - 1];
          return tail_ && tail_->theta_inf > 0.0 ? std::log(tail_->theta_inf)
                                                 : kLogZero;
        };
        b.log_g1 = nth(1);
        b.log_g2 = nth(2);
        b.log_g3 = nth(3) == kLogZero ? kLogZero : std::log(2.0) + nth(3);
        return b;
      }
      const double log_r = std::log(r);
      LogAccumulator a1, a2, a3;
      for (std::size_t k = 1; k <= theta_.size(); ++k) {
        const double lt = log_theta_[k - 1];
        if (lt == kLogZero) continue;
        const double dk = static_cast<double>(k);
        a1.add(lt + (dk - 1.0) * log_r);
        if (k >= 2) a2.add(lt + std::log(dk - 1.0) + (dk - 2.0) * log_r);
        if (k >= 3)
          a3.add(lt + std::log((dk - 1.0) * (dk - 2.0)) + (dk - 3.0) * log_r);
      }
      if (tail_ && tail_->theta_inf > 0.0) {
        const double m = static_cast<double>(theta_.size());
        const double lt = std::log(tail_->theta_inf);
        // d^j/dr^j of sum_{k>m} r^(k-1) = r^m/(1-r)
        a1.add(lt + m * log_r - lv);
        if (r > 0.0) {
          double t1 = m * std::pow(r, m - 1.0) * (1.0 - r) + std::pow(r, m);
          a2.add(lt + std::log(t1) - 2.0 * lv);
          double t2 = m * (m - 1.0) * std::pow(r, m - 2.0) * (1.0 - r) *
                          (1.0 - r) +
                      2.0 * m * std::pow(r, m - 1.0) * (1.0 - r) +
                      2.0 * std::pow(r, m);
          a3.add(lt + std::log(t2) - 3.0 * lv);
        }
      }
      b.log_g1 = a1.value();
      b.log_g2 = a2.value();
      b.log_g3 = a3.value();
      return b;
    }
  }
  throw std::logic_error("unreachable");
}

DerivBundle WeightModel::eval_derivs(double r) const {
  LogDerivBundle lb = eval_log_derivs(r);
  auto lift = [](double l) { return l == kLogZero ? 0.0 : std::exp(l); };
  return DerivBundle{lift(lb.log_g), lift(lb.log_g1), lift(lb.log_g2),
                     lift(lb.log_g3)};
}

double WeightModel::a_of(double r) const {
  if (r == 0.0) return 0.0;
  return std::exp(log_a(r));
}

double WeightModel::b_of(double r) const {
  if (r == 0.0) return 0.0;
  return std::exp(log_b(r));
}

double WeightModel::log_a(double r) const {
  check_real_domain(r);
  if (r == 0.0) return kLogZero;
  LogDerivBundle lb = eval_log_derivs(r);
  return std::log(r) + lb.log_g1;
}

double WeightModel::log_b(double r) const {
  check_real_domain(r);
  if (r == 0.0) return kLogZero;
  LogDerivBundle lb = eval_log_derivs(r);
  const double log_r = std::log(r);
  return log_r + log_add(lb.log_g1, log_r + lb.log_g2);
}

double WeightModel::remainder_scale(double r) const {
  check_real_domain(r);
  if (r == 0.0) return 0.0;
  LogDerivBundle lb = eval_log_derivs(r);
  const double log_r = std::log(r);
  LogAccumulator acc;
  acc.add(log_r + lb.log_g1);
  acc.add(std::log(3.0) + 2.0 * log_r + lb.log_g2);
  acc.add(3.0 * log_r + lb.log_g3);
  return std::exp(acc.value());
}

double WeightModel::log_theta(std::int64_t k) const {
  if (k < 1) throw std::domain_error("theta index starts at 1");
  const double dk = static_cast<double>(k);
  switch (kind_) {
    case WeightKind::kEwens:
      return std::log(theta0_);
    case WeightKind::kAlgebraic:
      // theta_k = k * gamma * [t^k](1-t)^(-beta)
      return std::log(dk) + std::log(gamma_) + log_binom_coeff(beta_, k);
    case WeightKind::kSubexponential: {
      auto coeffs = subexp_log_coeffs(beta_, static_cast<std::size_t>(k));
      return std::log(dk) + coeffs[static_cast<std::size_t>(k)];
    }
    case WeightKind::kExplicit: {
      if (static_cast<std::size_t>(k) <= theta_.size())
        return log_theta_[static_cast<std::size_t>(k - 1)];
      if (tail_)
        return tail_->theta_inf > 0.0 ? std::log(tail_->theta_inf) : kLogZero;
      return kLogZero;
    }
  }
  throw std::logic_error("unreachable");
}

double WeightModel::theta(std::int64_t k) const {
  double l = log_theta(k);
  return l == kLogZero ? 0.0 : std::exp(l);
}

std::vector<double> WeightModel::log_thetas(std::size_t n) const {
  std::vector<double> out(n + 1, kLogZero);
  if (kind_ == WeightKind::kSubexponential) {
    auto coeffs = subexp_log_coeffs(beta_, n);
    for (std::size_t k = 1; k <= n; ++k)
      out[k] = std::log(static_cast<double>(k)) + coeffs[k];
    return out;
  }
  for (std::size_t k = 1; k <= n; ++k)
    out[k] = log_theta(static_cast<std::int64_t>(k));
  return out;
}

WeightModel WeightModel::tilt(double s, std::size_t order) const {
  if (kind_ == WeightKind::kEwens) return ewens(theta0_ * std::exp(-s));
  if (kind_ == WeightKind::kExplicit && !tail_) {
    std::vector<double> scaled(theta_.size());
    const double f = std::exp(-s);
    for (std::size_t i = 0; i < theta_.size(); ++i) scaled[i] = theta_[i] * f;
    return explicit_list(std::move(scaled), radius_);
  }
  std::size_t n = std::max(order, series_order_);
  if (kind_ == WeightKind::kExplicit) n = std::max(n, theta_.size());
  auto logs = log_thetas(n);
  std::vector<double> scaled(n);
  for (std::size_t k = 1; k <= n; ++k)
    scaled[k - 1] = logs[k] == kLogZero ? 0.0 : std::exp(logs[k] - s);
  return explicit_list(std::move(scaled), radius_);
}

double WeightModel::series_constant() const {
  switch (kind_) {
    case WeightKind::kEwens:
      return 0.0;
    case WeightKind::kAlgebraic:
      return gamma_;
    case WeightKind::kSubexponential:
      return std::exp(1.0);
    case WeightKind::kExplicit:
      return 0.0;
  }
  throw std::logic_error("unreachable");
}

double WeightModel::truncation_tail_bound(double r) const {
  if (kind_ != WeightKind::kExplicit || tail_ || theta_.empty() || r <= 0.0)
    return 0.0;
  double theta_max = *std::max_element(theta_.begin(), theta_.end());
  const double n = static_cast<double>(theta_.size());
  // sum_{k>N} theta_max r^k / k <= theta_max r^N / (N (1-r))
  return theta_max * std::pow(r, n) / (n * (1.0 - r));
}

ScaledComplex WeightModel::eval_g_circle(double r, double phi) const {
  check_real_domain(r);
  const std::complex<double> z = std::polar(r, phi);
  const std::complex<double> one(1.0, 0.0);
  switch (kind_) {
    case WeightKind::kEwens:
      return {-theta0_ * std::log(one - z), 0.0};
    case WeightKind::kAlgebraic: {
      const std::complex<double> w = -beta_ * std::log(one - z);
      return {gamma_ * std::exp(std::complex<double>(0.0, w.imag())),
              w.real()};
    }
    case WeightKind::kSubexponential: {
      // g = exp(w), w = (1-z)^(-beta); split |g| = e^{Re w} into the scale.
      const std::complex<double> w =
          std::exp(-beta_ * std::log(one - z));
      return {std::exp(std::complex<double>(0.0, w.imag())), w.real()};
    }
    case WeightKind::kExplicit: {
      // Scaled series sum; the scale is the largest term magnitude.
      double m = kLogZero;
      const double log_r = r > 0.0 ? std::log(r) : kLogZero;
      std::vector<double> lt(theta_.size());
      for (std::size_t k = 1; k <= theta_.size(); ++k) {
        lt[k - 1] = log_theta_[k - 1] + static_cast<double>(k) * log_r -
                    std::log(static_cast<double>(k));
        m = std::max(m, lt[k - 1]);
      }
      if (m == kLogZero && !tail_) return {{0.0, 0.0}, 0.0};
      if (m == kLogZero) m = 0.0;
      std::complex<double> sum(0.0, 0.0);
      for (std::size_t k = 1; k <= theta_.size(); ++k) {
        if (lt[k - 1] == kLogZero) continue;
        sum += std::exp(lt[k - 1] - m) *
               std::polar(1.0, static_cast<double>(k) * phi);
      }
      if (tail_ && tail_->theta_inf > 0.0) {
        std::complex<double> head(0.0, 0.0);
        std::complex<double> p = one;
        for (std::size_t k = 1; k <= theta_.size(); ++k) {
          p *= z;
          head += p / static_cast<double>(k);
        }
        sum += tail_->theta_inf * (-std::log(one - z) - head) *
               std::exp(-m);
      }
      return {sum, m};
    }
  }
  throw std::logic_error("unreachable");
}

ScaledComplex WeightModel::eval_d3_circle(double r, double phi) const {
  check_real_domain(r);
  const std::complex<double> z = std::polar(r, phi);
  const std::complex<double> one(1.0, 0.0);
  const std::complex<double> v = one - z;
  switch (kind_) {
    case WeightKind::kEwens: {
      // theta0 [ z(1-z)^2 + 3 z^2 (1-z) + 2 z^3 ] / (1-z)^3
      std::complex<double> num = z * v * v + 3.0 * z * z * v + 2.0 * z * z * z;
      return {theta0_ * num / (v * v * v), 0.0};
    }
    case WeightKind::kAlgebraic: {
      // gamma beta (1-z)^(-beta-3) [ z(1-z)^2 + 3(beta+1) z^2 (1-z)
      //                              + (beta+1)(beta+2) z^3 ]
      const std::complex<double> lw = std::log(v);
      const std::complex<double> w = -(beta_ + 3.0) * lw;
      std::complex<double> bracket =
          z * v * v + 3.0 * (beta_ + 1.0) * z * z * v +
          (beta_ + 1.0) * (beta_ + 2.0) * z * z * z;
      std::complex<double> mant =
          gamma_ * beta_ * bracket *
          std::exp(std::complex<double>(0.0, w.imag()));
      return {mant, w.real()};
    }
    case WeightKind::kSubexponential: {
      // D3 = P(z) e^u with u = (1-z)^(-beta); the exponential carries the
      // overflow risk, so e^{Re u} goes into the scale.
      const std::complex<double> lw = std::log(v);
      const std::complex<double> u = std::exp(-beta_ * lw);
      auto vpow = [&](double e) { return std::exp(-e * lw); };
      const double b = beta_;
      std::complex<double> g1 = b * vpow(b + 1.0);
      std::complex<double> g2 =
          b * (b + 1.0) * vpow(b + 2.0) + b * b * vpow(2.0 * b + 2.0);
      std::complex<double> g3 = b * ((b + 1.0) * (b + 2.0) * vpow(b + 3.0) +
                                     3.0 * b * (b + 1.0) * vpow(2.0 * b + 3.0) +
                                     b * b * vpow(3.0 * b + 3.0));
      std::complex<double> p = z * g1 + 3.0 * z * z * g2 + z * z * z * g3;
      std::complex<double> mant =
          p * std::exp(std::complex<double>(0.0, u.imag()));
      return {mant, u.real()};
    }
    case WeightKind::kExplicit: {
      // D3(z) = sum_k theta_k k^2 z^k (+ tail terms); moderate magnitudes.
      std::complex<double> sum(0.0, 0.0);
      std::complex<double> p = one;
      for (std::size_t k = 1; k <= theta_.size(); ++k) {
        p *= z;
        const double dk = static_cast<double>(k);
        sum += theta_[k - 1] * dk * dk * p;
      }
      if (tail_ && tail_->theta_inf > 0.0) {
        // sum_{k>=1} k^2 z^k = z (1+z) / (1-z)^3, minus the explicit head.
        std::complex<double> s2_all = z * (one + z) / (v * v * v);
        std::complex<double> head2(0.0, 0.0);
        std::complex<double> q = one;
        for (std::size_t k = 1; k <= theta_.size(); ++k) {
          q *= z;
          head2 += static_cast<double>(k) * static_cast<double>(k) * q;
        }
        sum += tail_->theta_inf * (s2_all - head2);
      }
      return {sum, 0.0};
    }
  }
  throw std::logic_error("unreachable");
}

std::string WeightModel::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case WeightKind::kEwens:
      os << "ewens(theta0=" << theta0_ << ")";
      break;
    case WeightKind::kAlgebraic:
      os << "algebraic(beta=" << beta_ << ", gamma=" << gamma_ << ")";
      break;
    case WeightKind::kSubexponential:
      os << "subexp(beta=" << beta_ << ")";
      break;
    case WeightKind::kExplicit:
      os << "explicit(" << theta_.size() << " weights, radius=" << radius_
         << (tail_ ? ", constant tail)" : ")");
      break;
  }
  return os.str();
}

WeightModel model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("model descriptor: ") + e.what());
  }
  if (!j.is_object())
    throw std::invalid_argument("model descriptor must be a JSON object");
  auto require_keys = [&](std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      bool ok = false;
      for (const char* a : allowed)
        if (it.key() == a) ok = true;
      if (!ok)
        throw std::invalid_argument("unknown model field: " + it.key());
    }
  };
  const std::string kind = j.value("kind", std::string());
  if (kind == "ewens") {
    require_keys({"kind", "theta"});
    return WeightModel::ewens(j.at("theta").get<double>());
  }
  if (kind == "algebraic") {
    require_keys({"kind", "beta", "gamma"});
    return WeightModel::algebraic(j.at("beta").get<double>(),
                                  j.at("gamma").get<double>());
  }
  if (kind == "subexp") {
    require_keys({"kind", "beta"});
    return WeightModel::subexponential(j.at("beta").get<double>());
  }
  if (kind == "explicit") {
    require_keys({"kind", "theta", "radius", "tail_theta"});
    std::vector<double> theta = j.at("theta").get<std::vector<double>>();
    std::optional<ConstantTail> tail;
    if (j.contains("tail_theta"))
      tail = ConstantTail{j.at("tail_theta").get<double>()};
    double radius = j.value("radius", 1.0);
    return WeightModel::explicit_list(std::move(theta), radius, tail);
  }
  throw std::invalid_argument("unknown model kind: '" + kind + "'");
}

std::string model_to_json(const WeightModel& model) {
  nlohmann::json j;
  switch (model.kind()) {
    case WeightKind::kEwens:
      j = {{"kind", "ewens"}, {"theta", model.theta0()}};
      break;
    case WeightKind::kAlgebraic:
      j = {{"kind", "algebraic"},
           {"beta", model.beta()},
           {"gamma", model.gamma()}};
      break;
    case WeightKind::kSubexponential:
      j = {{"kind", "subexp"}, {"beta", model.beta()}};
      break;
    case WeightKind::kExplicit:
      j = {{"kind", "explicit"},
           {"theta", model.explicit_thetas()},
           {"radius", model.radius()}};
      break;
  }
  return j.dump();
}

}  // namespace permcycles
