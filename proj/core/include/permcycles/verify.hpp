#ifndef PERMCYCLES_VERIFY_HPP
#define PERMCYCLES_VERIFY_HPP

#include <string>
#include <vector>

namespace permcycles::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Normalized slack: how far inside the acceptance band the worst
  /// measurement landed (1 = at the nominal target, 0 = on the boundary,
  /// negative = failed).
  double margin = 0.0;
  std::string details;
  double seconds = 0.0;
};

/// Names of the ten verification criteria, by id 1..10.
const char* criterion_name(int id);

/// Runs one criterion.
CriterionResult run_criterion(int id);

/// Runs a set of criteria (all ten when ids is empty), in id order.
std::vector<CriterionResult> run_acceptance(std::vector<int> ids = {});

/// One "[PASS]/[FAIL] id. name ..." line per result.
std::string format_result_line(const CriterionResult& r);

/// JSON report of a run: [{id, name, pass, margin, seconds, details}, ...].
std::string report_json(const std::vector<CriterionResult>& results);

}  // namespace permcycles::verify

#endif  // PERMCYCLES_VERIFY_HPP
