#include "permcycles/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

#include <json.hpp>

namespace permcycles {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv_preamble(std::ostream& os, const CsvOptions& opts) {
  if (!opts.config_json.empty()) os << "# config: " << opts.config_json << "\n";
  if (opts.timestamp) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    os << "# generated: " << buf << "\n";
  }
}

void write_pmf_csv(std::ostream& os, const CycleCountDistribution& dist,
                   const CsvOptions& opts) {
  write_csv_preamble(os, opts);
  os << "n,k,log_mass,prob\n";
  for (std::size_t k = 0; k < dist.log_mass.size(); ++k)
    os << dist.n << ',' << k << ',' << format_double(dist.log_mass[k]) << ','
       << format_double(dist.prob(k)) << "\n";
}

void write_h_table_csv(std::ostream& os, const ExactTable& table,
                       const CsvOptions& opts) {
  write_csv_preamble(os, opts);
  os << "n,log_h\n";
  for (std::size_t n = 0; n < table.log_h.size(); ++n)
    os << n << ',' << format_double(table.log_h[n]) << "\n";
}

void write_saddle_csv(std::ostream& os, std::span<const SaddlePoint> points,
                      const CsvOptions& opts) {
  write_csv_preamble(os, opts);
  os << "x,r_x,g,b,eta1,eta2,eta3,eta4\n";
  for (const auto& p : points)
    os << format_double(p.x) << ',' << format_double(p.r) << ','
       << format_double(p.g) << ',' << format_double(p.b) << ','
       << format_double(p.eta[0]) << ',' << format_double(p.eta[1]) << ','
       << format_double(p.eta[2]) << ',' << format_double(p.eta[3]) << "\n";
}

void write_moments_csv(std::ostream& os, std::span<const MomentsRow> rows,
                       const CsvOptions& opts) {
  write_csv_preamble(os, opts);
  os << "n,mu,sigma2,xi,sigma2_valid,mu_closed,sigma2_closed\n";
  for (const auto& row : rows) {
    os << format_double(row.n) << ',' << format_double(row.generic.mu) << ','
       << format_double(row.generic.sigma2) << ','
       << format_double(row.generic.xi) << ','
       << (row.generic.sigma2_valid ? 1 : 0) << ',';
    if (row.has_closed)
      os << format_double(row.mu_closed) << ','
         << format_double(row.sigma2_closed);
    else
      os << ',';
    os << "\n";
  }
}

namespace {

void write_condition(std::ostream& os, const ConditionReport& c) {
  for (std::size_t i = 0; i < c.r.size(); ++i)
    os << c.name << ',' << format_double(c.r[i]) << ','
       << format_double(i < c.margin.size() ? c.margin[i] : 0.0) << ','
       << (c.pass ? "pass" : "fail") << "\n";
}

}  // namespace

void write_admissibility_csv(std::ostream& os,
                             const AdmissibilityReport& report,
                             const CsvOptions& opts) {
  write_csv_preamble(os, opts);
  os << "condition,r,margin,verdict\n";
  write_condition(os, report.approximation);
  write_condition(os, report.divergence);
  write_condition(os, report.width);
  write_condition(os, report.monotonicity);
}

void write_histogram_csv(std::ostream& os, const McSummary& summary,
                         const CsvOptions& opts) {
  write_csv_preamble(os, opts);
  os << "n,k,count\n";
  for (std::size_t k = 0; k < summary.histogram.size(); ++k) {
    if (summary.histogram[k] == 0) continue;
    os << summary.n << ',' << k << ',' << summary.histogram[k] << "\n";
  }
}

std::string mc_summary_json(const McSummary& summary) {
  nlohmann::json j;
  j["n"] = summary.n;
  j["samples"] = summary.n_samples;
  j["seed"] = summary.seed;
  j["mean"] = summary.mean;
  j["variance"] = summary.variance;
  if (std::isnan(summary.ks_distance))
    j["ks"] = nullptr;
  else
    j["ks"] = summary.ks_distance;
  return j.dump();
}

}  // namespace permcycles
