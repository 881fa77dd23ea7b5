#include "permcycles/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "permcycles/detail/parallel.hpp"
#include "permcycles/log_space.hpp"

namespace permcycles {

namespace {

// First-cycle-length probabilities at remaining size m, in plain space.
std::vector<double> first_length_probs(const std::vector<double>& log_theta,
                                       const std::vector<double>& log_h,
                                       std::size_t m) {
  std::vector<double> p(m + 1, 0.0);
  const double log_norm = std::log(static_cast<double>(m)) + log_h[m];
  for (std::size_t j = 1; j <= m; ++j) {
    if (log_theta[j] == kLogZero || log_h[m - j] == kLogZero) continue;
    p[j] = std::exp(log_theta[j] + log_h[m - j] - log_norm);
  }
  return p;
}

double probs_total(const std::vector<double>& p) {
  KahanSum s;
  for (double v : p) s.add(v);
  return s.value();
}

}  // namespace

CycleType sample_cycle_type(const WeightModel& model, const ExactTable& table,
                            std::size_t n, SplitMix64Stream& rng) {
  if (table.max_n() < n)
    throw std::invalid_argument("sample_cycle_type: table does not cover n");
  auto log_theta = model.log_thetas(n);

  CycleType ct;
  ct.n = n;
  std::size_t m = n;
  bool checked = false;
  while (m > 0) {
    if (table.log_h[m] == kLogZero)
      throw std::runtime_error("sample_cycle_type: reached h_m = 0 state");
    auto p = first_length_probs(log_theta, table.log_h, m);
    if (!checked) {
      // Normalization holds exactly by the h-recurrence; a violation means
      // the table is corrupt.
      if (std::fabs(probs_total(p) - 1.0) > 1e-9)
        throw std::runtime_error(
            "sample_cycle_type: first-length weights do not normalize");
      checked = true;
    }
    const double u = rng.next_double();
    double cum = 0.0;
    std::size_t pick = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      if (p[j] == 0.0) continue;
      cum += p[j];
      pick = j;
      if (u < cum) break;
    }
    if (pick == 0)
      throw std::runtime_error("sample_cycle_type: no admissible length");
    ++ct.counts[pick];
    m -= pick;
  }
  return ct;
}

CycleSampler::CycleSampler(const WeightModel& model, ExactTable table,
                           std::size_t n)
    : table_(std::move(table)), n_(n) {
  if (table_.max_n() < n)
    throw std::invalid_argument("CycleSampler: table does not cover n");
  log_theta_ = model.log_thetas(n);
  if (n == 0) return;
  if (table_.log_h[n] == kLogZero)
    throw std::domain_error("CycleSampler: measure has no support at n");

  auto p = first_length_probs(log_theta_, table_.log_h, n);
  if (std::fabs(probs_total(p) - 1.0) > 1e-9)
    throw std::runtime_error(
        "CycleSampler: first-length weights do not normalize; table corrupt");

  // Vose alias construction over lengths 1..n.
  alias_prob_.assign(n, 0.0);
  alias_idx_.assign(n, 0);
  std::vector<std::uint32_t> small, large;
  std::vector<double> scaled(n);
  for (std::size_t j = 0; j < n; ++j) {
    scaled[j] = p[j + 1] * static_cast<double>(n);
    (scaled[j] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(j));
  }
  while (!small.empty() && !large.empty()) {
    std::uint32_t s = small.back();
    small.pop_back();
    std::uint32_t l = large.back();
    large.pop_back();
    alias_prob_[s] = scaled[s];
    alias_idx_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  while (!large.empty()) {
    alias_prob_[large.back()] = 1.0;
    large.pop_back();
  }
  while (!small.empty()) {  // rounding leftovers
    alias_prob_[small.back()] = 1.0;
    small.pop_back();
  }
}

std::size_t CycleSampler::draw_first_length(SplitMix64Stream& rng) const {
  const std::size_t i =
      static_cast<std::size_t>(rng.next_u64() % static_cast<std::uint64_t>(n_));
  const double u = rng.next_double();
  return u < alias_prob_[i] ? i + 1 : static_cast<std::size_t>(alias_idx_[i]) + 1;
}

std::size_t CycleSampler::draw_length_scan(std::size_t m,
                                           SplitMix64Stream& rng) const {
  const double log_norm =
      std::log(static_cast<double>(m)) + table_.log_h[m];
  const double u = rng.next_double();
  double cum = 0.0;
  std::size_t pick = 0;
  for (std::size_t j = 1; j <= m; ++j) {
    if (log_theta_[j] == kLogZero || table_.log_h[m - j] == kLogZero)
      continue;
    cum += std::exp(log_theta_[j] + table_.log_h[m - j] - log_norm);
    pick = j;
    if (u < cum) break;
  }
  if (pick == 0 || (u >= cum && std::fabs(cum - 1.0) > 1e-9))
    throw std::runtime_error("CycleSampler: length weights do not normalize");
  return pick;
}

CycleType CycleSampler::sample(SplitMix64Stream& rng) const {
  CycleType ct;
  ct.n = n_;
  std::size_t m = n_;
  while (m > 0) {
    std::size_t j =
        (m == n_) ? draw_first_length(rng) : draw_length_scan(m, rng);
    ++ct.counts[j];
    m -= j;
  }
  return ct;
}

McSummary monte_carlo(const WeightModel& model, std::size_t n,
                      std::size_t n_samples, std::uint64_t seed,
                      unsigned n_threads) {
  if (n_samples == 0)
    throw std::invalid_argument("monte_carlo: need at least one sample");
  McSummary s;
  s.n = n;
  s.n_samples = n_samples;
  s.seed = seed;
  s.histogram.assign(n + 1, 0);
  if (n == 0) {
    s.histogram[0] = n_samples;
    return s;
  }

  CycleSampler sampler(model, compute_h(model, n), n);
  const unsigned threads = detail::effective_threads(n_threads);
  std::vector<std::vector<std::uint64_t>> local(
      threads, std::vector<std::uint64_t>(n + 1, 0));
  detail::parallel_for(0, threads, threads, [&](std::size_t t) {
    auto& hist = local[t];
    for (std::size_t i = t; i < n_samples; i += threads) {
      SplitMix64Stream rng(seed, i);  // stream index = sample index
      ++hist[sampler.sample(rng).total_cycles()];
    }
  });
  for (const auto& hist : local)
    for (std::size_t k = 0; k <= n; ++k) s.histogram[k] += hist[k];

  KahanSum mean_sum;
  for (std::size_t k = 0; k <= n; ++k)
    mean_sum.add(static_cast<double>(k) * static_cast<double>(s.histogram[k]));
  s.mean = mean_sum.value() / static_cast<double>(n_samples);
  KahanSum var_sum;
  for (std::size_t k = 0; k <= n; ++k) {
    double d = static_cast<double>(k) - s.mean;
    var_sum.add(d * d * static_cast<double>(s.histogram[k]));
  }
  s.variance = n_samples > 1
                   ? var_sum.value() / static_cast<double>(n_samples - 1)
                   : 0.0;
  s.ks_distance = s.variance > 0.0
                      ? ks_distance(s.histogram, s.mean, std::sqrt(s.variance))
                      : std::numeric_limits<double>::quiet_NaN();
  return s;
}

double ks_distance(const CycleCountDistribution& dist, double mu,
                   double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("ks_distance: sigma must be > 0");
  double worst = 0.0;
  KahanSum cdf;
  for (std::size_t k = 0; k < dist.log_mass.size(); ++k) {
    cdf.add(dist.prob(k));
    const double z = (static_cast<double>(k) + 0.5 - mu) / sigma;
    worst = std::max(worst, std::fabs(cdf.value() - normal_cdf(z)));
  }
  return worst;
}

double ks_distance(const std::vector<std::uint64_t>& histogram, double mu,
                   double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("ks_distance: sigma must be > 0");
  std::uint64_t total = 0;
  for (auto c : histogram) total += c;
  if (total == 0) throw std::domain_error("ks_distance: empty histogram");
  double worst = 0.0;
  double before = 0.0;
  std::uint64_t cum = 0;
  for (std::size_t k = 0; k < histogram.size(); ++k) {
    if (histogram[k] == 0) continue;
    cum += histogram[k];
    const double at = static_cast<double>(cum) / static_cast<double>(total);
    const double phi = normal_cdf((static_cast<double>(k) - mu) / sigma);
    worst = std::max({worst, std::fabs(at - phi), std::fabs(before - phi)});
    before = at;
  }
  return worst;
}

ChiSquareResult sampler_gof(const WeightModel& model, std::size_t n,
                            std::size_t n_samples, std::uint64_t seed) {
  McSummary mc = monte_carlo(model, n, n_samples, seed);
  CycleCountDistribution dist =
      cycle_count_distribution(model, n, SupportPolicy::kFull);
  std::vector<double> observed(n + 1), expected(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    observed[k] = static_cast<double>(mc.histogram[k]);
    expected[k] = dist.prob(k) * static_cast<double>(n_samples);
  }
  return chi_square_gof(observed, expected);
}

}  // namespace permcycles
