#include "permcycles/exact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "permcycles/detail/parallel.hpp"
#include "permcycles/log_space.hpp"

namespace permcycles {

namespace {

// Streaming LSE over j of (log_theta[j] + other[n-j]). The hot loop of
// every recurrence here.
inline double convolve_level(const std::vector<double>& log_theta,
                             const double* other, std::size_t n,
                             std::size_t j_max) {
  LogAccumulator acc;
  for (std::size_t j = 1; j <= j_max; ++j) {
    const double lt = log_theta[j];
    if (lt == kLogZero) continue;
    const double lo = other[n - j];
    if (lo == kLogZero) continue;
    acc.add(lt + lo);
  }
  return acc.value();
}

}  // namespace

double ExactTable::max_recurrence_residual() const {
  auto log_theta = model.log_thetas(max_n());
  double worst = 0.0;
  for (std::size_t n = 1; n <= max_n(); ++n) {
    double rhs = convolve_level(log_theta, log_h.data(), n, n) -
                 std::log(static_cast<double>(n));
    if (log_h[n] == kLogZero && rhs == kLogZero) continue;
    worst = std::max(worst, std::fabs(rhs - log_h[n]));
  }
  return worst;
}

ExactTable compute_h(const WeightModel& model, std::size_t n_max) {
  ExactTable table{model, std::vector<double>(n_max + 1, kLogZero)};
  table.log_h[0] = 0.0;
  if (n_max == 0) return table;
  auto log_theta = model.log_thetas(n_max);
  for (std::size_t n = 1; n <= n_max; ++n)
    table.log_h[n] = convolve_level(log_theta, table.log_h.data(), n, n) -
                     std::log(static_cast<double>(n));
  return table;
}

double tilted_log_coefficient(const WeightModel& model, std::size_t n,
                              double s) {
  if (s == 0.0) return compute_h(model, n).log_h[n];
  return compute_h(model.tilt(s, n), n).log_h[n];
}

double CycleCountDistribution::log_prob(std::size_t k) const {
  if (k >= log_mass.size()) return kLogZero;
  if (log_mass[k] == kLogZero) return kLogZero;
  return log_mass[k] - log_h;
}

double CycleCountDistribution::prob(std::size_t k) const {
  double lp = log_prob(k);
  return lp == kLogZero ? 0.0 : std::exp(lp);
}

CycleCountDistribution cycle_count_distribution(const WeightModel& model,
                                                std::size_t n,
                                                SupportPolicy policy,
                                                unsigned n_threads) {
  CycleCountDistribution dist;
  dist.n = n;
  if (n == 0) {
    dist.log_mass = {0.0};  // K_{00} = 0 with mass h_0 = 1
    dist.log_h = 0.0;
    dist.k_max = 0;
    return dist;
  }

  ExactTable table = compute_h(model, n);
  dist.log_h = table.log_h[n];
  if (dist.log_h == kLogZero)
    throw std::domain_error("measure has no support at this n");

  std::size_t cap = n;
  if (policy == SupportPolicy::kAuto && n > 512) {
    // Chernoff cap: P(K > c) <= E e^K e^{-c} = (G_{n,-1}/h_n) e^{-c}.
    // c = log E e^K + 45 certifies a dropped mass below e^{-45} h_n.
    double log_g = tilted_log_coefficient(model, n, -1.0);
    double c = log_g - dist.log_h + 45.0;
    cap = std::min<std::size_t>(
        n, static_cast<std::size_t>(std::max(16.0, std::ceil(c))));
    if (cap < n) dist.log_tail_bound = log_g - static_cast<double>(cap);
  }
  dist.k_max = cap;

  auto log_theta = model.log_thetas(n);

  // k-major sweep over levels of the bivariate recurrence
  //   m h_{m,k} = sum_j theta_j h_{m-j,k-1}.
  // Level k depends only on level k-1, so the m loop parallelizes.
  std::vector<double> prev(n + 1, kLogZero), cur(n + 1, kLogZero);
  prev[0] = 0.0;
  dist.log_mass.assign(cap + 1, kLogZero);
  const unsigned threads = detail::effective_threads(n_threads);
  for (std::size_t k = 1; k <= cap; ++k) {
    std::fill(cur.begin(), cur.end(), kLogZero);
    detail::parallel_for(k, n + 1, threads, [&](std::size_t m) {
      // h_{m-j,k-1} vanishes unless m - j >= k - 1
      double v = convolve_level(log_theta, prev.data(), m, m - k + 1);
      cur[m] = v == kLogZero ? kLogZero
                             : v - std::log(static_cast<double>(m));
    });
    dist.log_mass[k] = cur[n];
    std::swap(prev, cur);
  }
  return dist;
}

Moments exact_moments(const CycleCountDistribution& dist) {
  KahanSum mean_sum;
  for (std::size_t k = 0; k < dist.log_mass.size(); ++k) {
    double lp = dist.log_prob(k);
    if (lp == kLogZero) continue;
    mean_sum.add(static_cast<double>(k) * std::exp(lp));
  }
  const double mean = mean_sum.value();
  KahanSum var_sum;
  for (std::size_t k = 0; k < dist.log_mass.size(); ++k) {
    double lp = dist.log_prob(k);
    if (lp == kLogZero) continue;
    double d = static_cast<double>(k) - mean;
    var_sum.add(d * d * std::exp(lp));
  }
  return {mean, var_sum.value()};
}

Moments exact_moments_by_recurrence(const WeightModel& model, std::size_t n) {
  // H_n = h_n, A_n = sum_k k h_{n,k}, B_n = sum_k k(k-1) h_{n,k} satisfy
  //   n H_n = sum_j theta_j H_{n-j}
  //   n A_n = sum_j theta_j (H_{n-j} + A_{n-j})
  //   n B_n = sum_j theta_j (2 A_{n-j} + B_{n-j})
  // (differentiate the generating identity in the cycle-marking variable).
  if (n == 0) return {0.0, 0.0};
  auto log_theta = model.log_thetas(n);
  std::vector<double> H(n + 1, kLogZero), A(n + 1, kLogZero),
      B(n + 1, kLogZero);
  H[0] = 0.0;
  const double log2 = std::log(2.0);
  for (std::size_t m = 1; m <= n; ++m) {
    LogAccumulator h_acc, a_acc, b_acc;
    for (std::size_t j = 1; j <= m; ++j) {
      const double lt = log_theta[j];
      if (lt == kLogZero) continue;
      const std::size_t i = m - j;
      if (H[i] != kLogZero) {
        h_acc.add(lt + H[i]);
        a_acc.add(lt + H[i]);
      }
      if (A[i] != kLogZero) {
        a_acc.add(lt + A[i]);
        b_acc.add(lt + log2 + A[i]);
      }
      if (B[i] != kLogZero) b_acc.add(lt + B[i]);
    }
    const double log_m = std::log(static_cast<double>(m));
    H[m] = h_acc.empty() ? kLogZero : h_acc.value() - log_m;
    A[m] = a_acc.empty() ? kLogZero : a_acc.value() - log_m;
    B[m] = b_acc.empty() ? kLogZero : b_acc.value() - log_m;
  }
  if (H[n] == kLogZero)
    throw std::domain_error("measure has no support at this n");
  const double mean = std::exp(A[n] - H[n]);
  const double ekk1 = B[n] == kLogZero ? 0.0 : std::exp(B[n] - H[n]);
  return {mean, ekk1 + mean - mean * mean};
}

namespace {

void enumerate_partitions(std::size_t remaining, std::size_t max_part,
                          std::map<std::size_t, std::size_t>& counts,
                          const std::vector<double>& log_theta,
                          std::vector<CycleTypeProbability>& out) {
  if (remaining == 0) {
    // log mass of the conjugacy class: prod (theta_j/j)^(c_j) / c_j!
    double lm = 0.0;
    for (auto [j, c] : counts) {
      if (log_theta[j] == kLogZero) {
        lm = kLogZero;
        break;
      }
      lm += static_cast<double>(c) *
                (log_theta[j] - std::log(static_cast<double>(j))) -
            std::lgamma(static_cast<double>(c) + 1.0);
    }
    if (lm != kLogZero) out.push_back({counts, lm});
    return;
  }
  for (std::size_t part = std::min(remaining, max_part); part >= 1; --part) {
    ++counts[part];
    enumerate_partitions(remaining - part, part, counts, log_theta, out);
    if (--counts[part] == 0) counts.erase(part);
  }
}

}  // namespace

BruteForceResult brute_force(const WeightModel& model, std::size_t n) {
  if (n > 9)
    throw std::domain_error("brute_force is limited to n <= 9");
  BruteForceResult res;
  res.dist.n = n;
  res.dist.k_max = n;
  res.dist.log_mass.assign(n + 1, kLogZero);
  if (n == 0) {
    res.log_h = 0.0;
    res.dist.log_mass[0] = 0.0;
    res.dist.log_h = 0.0;
    res.cycle_types.push_back({{}, 0.0});
    return res;
  }
  auto log_theta = model.log_thetas(n);
  std::map<std::size_t, std::size_t> counts;
  enumerate_partitions(n, n, counts, log_theta, res.cycle_types);

  LogAccumulator total;
  std::vector<LogAccumulator> per_k(n + 1);
  for (const auto& ct : res.cycle_types) {
    std::size_t k = 0;
    for (auto [j, c] : ct.counts) {
      (void)j;
      k += c;
    }
    total.add(ct.log_prob);  // still unnormalized mass here
    per_k[k].add(ct.log_prob);
  }
  res.log_h = total.value();
  if (res.log_h == kLogZero)
    throw std::domain_error("measure has no support at this n");
  for (std::size_t k = 0; k <= n; ++k)
    res.dist.log_mass[k] = per_k[k].value();
  res.dist.log_h = res.log_h;
  for (auto& ct : res.cycle_types) ct.log_prob -= res.log_h;
  return res;
}

double mgf_exact(const WeightModel& model, std::size_t n, double s) {
  CycleCountDistribution dist =
      cycle_count_distribution(model, n, SupportPolicy::kFull);
  LogAccumulator acc;
  for (std::size_t k = 0; k < dist.log_mass.size(); ++k) {
    if (dist.log_mass[k] == kLogZero) continue;
    acc.add(dist.log_mass[k] - dist.log_h - s * static_cast<double>(k));
  }
  const double from_pmf = std::exp(acc.value());
  const double from_tilt =
      std::exp(tilted_log_coefficient(model, n, s) - dist.log_h);
  if (std::fabs(from_pmf - from_tilt) > 1e-9 * std::fabs(from_tilt))
    throw std::runtime_error(
        "mgf_exact: pmf and tilted-table routes disagree; recurrence bug");
  return from_pmf;
}

}  // namespace permcycles
