#ifndef PERMCYCLES_IO_HPP
#define PERMCYCLES_IO_HPP

#include <ostream>
#include <span>
#include <string>

#include "permcycles/exact.hpp"
#include "permcycles/saddle.hpp"
#include "permcycles/sampler.hpp"

namespace permcycles {

/// CSV artifacts are self-describing: a "# config: {...}" JSON comment line
/// carries the run configuration, followed by an optional timestamp line
/// (disable it to get byte-identical reruns), then the header and rows.
struct CsvOptions {
  std::string config_json;  // written verbatim when non-empty
  bool timestamp = true;
};

std::string format_double(double v);  // %.17g, round-trip safe

void write_csv_preamble(std::ostream& os, const CsvOptions& opts);

void write_pmf_csv(std::ostream& os, const CycleCountDistribution& dist,
                   const CsvOptions& opts = {});
void write_h_table_csv(std::ostream& os, const ExactTable& table,
                       const CsvOptions& opts = {});
void write_saddle_csv(std::ostream& os, std::span<const SaddlePoint> points,
                      const CsvOptions& opts = {});

struct MomentsRow {
  double n = 0.0;
  AsymptoticMoments generic;
  bool has_closed = false;
  double mu_closed = 0.0;
  double sigma2_closed = 0.0;
};

void write_moments_csv(std::ostream& os, std::span<const MomentsRow> rows,
                       const CsvOptions& opts = {});
void write_admissibility_csv(std::ostream& os,
                             const AdmissibilityReport& report,
                             const CsvOptions& opts = {});
void write_histogram_csv(std::ostream& os, const McSummary& summary,
                         const CsvOptions& opts = {});

/// JSON summary of a Monte Carlo run: mean, variance, ks, seed, n, samples.
std::string mc_summary_json(const McSummary& summary);

}  // namespace permcycles

#endif  // PERMCYCLES_IO_HPP
