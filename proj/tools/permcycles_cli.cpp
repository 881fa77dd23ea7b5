// permcycles: exact and asymptotic statistics of cycle counts under
// weighted permutation measures.
//
// Subcommands: exact | asympt | sample | admissible | ldp | verify.
// Every artifact CSV starts with a "# config: {...}" line so plots can be
// traced back to the run that produced them.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permcycles/exact.hpp"
#include "permcycles/io.hpp"
#include "permcycles/sampler.hpp"
#include "permcycles/saddle.hpp"
#include "permcycles/verify.hpp"
#include "permcycles/weights.hpp"

namespace {

using namespace permcycles;
namespace fs = std::filesystem;

struct RunConfig {
  std::string model_text;
  std::size_t n = 0;
  std::vector<double> n_grid;
  std::vector<double> s_grid;
  std::size_t samples = 100000;
  std::uint64_t seed = 12345;
  std::string delta = "power:1.5";
  std::string out_dir = ".";
  bool no_timestamp = false;
  std::size_t budget = 2000;
  double a = 1.0;
  double eps = 3.0;

  nlohmann::json to_json(const std::string& command,
                         const WeightModel& model) const {
    nlohmann::json j;
    j["command"] = command;
    j["model"] = nlohmann::json::parse(model_to_json(model));
    if (n > 0) j["n"] = n;
    if (!n_grid.empty()) j["n_grid"] = n_grid;
    if (!s_grid.empty()) j["s_grid"] = s_grid;
    j["seed"] = seed;
    return j;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read model file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

WeightModel load_model(const std::string& spec) {
  std::string text = spec;
  if (!spec.empty() && spec.front() != '{') text = slurp(spec);
  return model_from_json(text);
}

DeltaSpec parse_delta(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::runtime_error("--delta expects form:alpha, e.g. power:1.4");
  const std::string form = text.substr(0, colon);
  const double alpha = std::stod(text.substr(colon + 1));
  DeltaSpec d;
  d.alpha = alpha;
  if (form == "power") {
    d.form = DeltaSpec::Form::kPower;
  } else if (form == "exp" || form == "exp_decay") {
    d.form = DeltaSpec::Form::kExpDecay;
  } else {
    throw std::runtime_error("unknown delta form: " + form);
  }
  return d;
}

std::ofstream open_artifact(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  fs::path p = fs::path(dir) / name;
  std::ofstream out(p, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

int cmd_exact(const RunConfig& cfg) {
  WeightModel model = load_model(cfg.model_text);
  if (cfg.n > cfg.budget) {
    std::cerr << "refusing: n=" << cfg.n << " exceeds the exact budget of "
              << cfg.budget << "; rerun with --budget " << cfg.n
              << " if the O(n^2)-O(n^3) cost is intended\n";
    return 2;
  }
  CsvOptions opts{cfg.to_json("exact", model).dump(), !cfg.no_timestamp};

  ExactTable table = compute_h(model, cfg.n);
  CycleCountDistribution dist = cycle_count_distribution(model, cfg.n);
  Moments m = exact_moments(dist);

  auto pmf = open_artifact(cfg.out_dir, "pmf.csv");
  write_pmf_csv(pmf, dist, opts);
  auto ht = open_artifact(cfg.out_dir, "h_table.csv");
  write_h_table_csv(ht, table, opts);

  nlohmann::json out;
  out["n"] = cfg.n;
  out["log_h_n"] = table.log_h[cfg.n];
  out["mean"] = m.mean;
  out["variance"] = m.variance;
  if (!cfg.s_grid.empty()) {
    nlohmann::json mgf = nlohmann::json::object();
    for (double s : cfg.s_grid)
      mgf[format_double(s)] = mgf_exact(model, cfg.n, s);
    out["mgf"] = mgf;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_asympt(const RunConfig& cfg) {
  WeightModel model = load_model(cfg.model_text);
  if (known_non_admissible(model)) {
    std::cerr << "refusing: " << model.describe()
              << " is not log-admissible (the width condition "
                 "eps delta^2 b - log b -> infinity fails for every power "
                 "delta); the saddle-point expansion does not apply. Run "
                 "'permcycles admissible' to see the per-condition report.\n";
    return 2;
  }
  if (cfg.n_grid.empty()) {
    std::cerr << "asympt requires --n-grid\n";
    return 2;
  }
  std::vector<MomentsRow> rows;
  std::vector<SaddlePoint> points;
  for (double n : cfg.n_grid) {
    MomentsRow row;
    row.n = n;
    try {
      row.generic = asymptotic_moments(model, n);
      points.push_back(solve_saddle(model, n));
    } catch (const std::domain_error& e) {
      std::cerr << "refusing: " << e.what() << "\n";
      return 2;
    }
    if (model.kind() == WeightKind::kAlgebraic) {
      AsymptoticMoments c = closed_form_algebraic(model.beta(), model.gamma(), n);
      row.has_closed = true;
      row.mu_closed = c.mu;
      row.sigma2_closed = c.sigma2;
    } else if (model.kind() == WeightKind::kSubexponential && n >= 3.0) {
      SubexpMoments c = closed_form_subexp(model.beta(), n);
      row.has_closed = true;
      row.mu_closed = c.leading.mu;
      row.sigma2_closed = c.leading.sigma2;
    }
    rows.push_back(row);
  }
  CsvOptions opts{cfg.to_json("asympt", model).dump(), !cfg.no_timestamp};
  auto out = open_artifact(cfg.out_dir, "moments.csv");
  write_moments_csv(out, rows, opts);
  for (const auto& row : rows)
    std::cout << "n=" << row.n << " mu=" << row.generic.mu
              << " sigma2=" << row.generic.sigma2 << " xi=" << row.generic.xi
              << (row.generic.sigma2_valid ? "" : "  [sigma2 not yet valid]")
              << "\n";
  return 0;
}

int cmd_sample(const RunConfig& cfg) {
  WeightModel model = load_model(cfg.model_text);
  McSummary mc = monte_carlo(model, cfg.n, cfg.samples, cfg.seed);
  CsvOptions opts{cfg.to_json("sample", model).dump(), !cfg.no_timestamp};
  auto out = open_artifact(cfg.out_dir, "histogram.csv");
  write_histogram_csv(out, mc, opts);
  std::cout << mc_summary_json(mc) << "\n";
  return 0;
}

int cmd_admissible(const RunConfig& cfg) {
  WeightModel model = load_model(cfg.model_text);
  AdmissibilityReport rep = check_admissibility(model, parse_delta(cfg.delta));
  CsvOptions opts{cfg.to_json("admissible", model).dump(), !cfg.no_timestamp};
  auto out = open_artifact(cfg.out_dir, "admissibility.csv");
  write_admissibility_csv(out, rep, opts);
  auto line = [](const ConditionReport& c) {
    std::cout << "  " << c.name << ": " << (c.pass ? "pass" : "FAIL");
    if (!c.note.empty()) std::cout << "  (" << c.note << ")";
    std::cout << "\n";
  };
  std::cout << model.describe() << " with delta " << rep.delta.describe()
            << ":\n";
  line(rep.approximation);
  line(rep.divergence);
  line(rep.width);
  line(rep.monotonicity);
  std::cout << "overall: " << (rep.overall ? "log-admissible for this delta"
                                           : "NOT admissible for this delta")
            << "\n";
  return 0;
}

int cmd_ldp(const RunConfig& cfg) {
  WeightModel model = load_model(cfg.model_text);
  LargeDeviationEstimate est =
      large_deviation_estimate(model, static_cast<double>(cfg.n), cfg.a, cfg.eps);
  nlohmann::json j;
  j["n"] = cfg.n;
  j["a"] = est.a;
  j["epsilon"] = est.epsilon;
  j["estimate"] = est.estimate;
  j["prefactor"] = est.prefactor;
  j["delta_scale"] = est.delta_scale;
  j["tilt_s"] = est.tilt_s;
  j["regime_valid"] = est.regime_valid;
  j["mu"] = est.moments.mu;
  j["sigma2"] = est.moments.sigma2;
  j["xi"] = est.moments.xi;
  std::cout << j.dump(2) << "\n";
  if (!est.regime_valid)
    std::cerr << "note: xi sigma^-3 a >= 1; the deviation regime is not "
                 "valid at this (n, a)\n";
  return 0;
}

int cmd_verify(const std::vector<std::string>& suites,
               const std::string& out_path) {
  std::vector<int> ids;
  for (const auto& s : suites) {
    if (s == "oracle") ids.push_back(1);
    else if (s == "mgf") ids.push_back(2);
    else if (s == "hn" || s == "hn-asympt") ids.push_back(3);
    else if (s == "moments" || s == "clt-moments") ids.push_back(4);
    else if (s == "clt" || s == "clt-normality") ids.push_back(5);
    else if (s == "admissibility") ids.push_back(6);
    else if (s == "closed-forms") ids.push_back(7);
    else if (s == "subexp" || s == "subexp-expansion") ids.push_back(8);
    else if (s == "ldp" || s == "large-deviations") ids.push_back(9);
    else if (s == "sampler") ids.push_back(10);
    else {
      std::cerr << "unknown suite: " << s << "\n";
      return 2;
    }
  }
  auto results = permcycles::verify::run_acceptance(ids);
  bool all = true;
  for (const auto& r : results) {
    std::cout << permcycles::verify::format_result_line(r) << "\n";
    if (!r.pass) {
      std::cout << "       " << r.details << "\n";
      all = false;
    }
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::trunc);
    out << permcycles::verify::report_json(results) << "\n";
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cycle-count statistics of weighted random permutations"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> suites;
  std::string report_path;

  auto add_model = [&](CLI::App* cmd) {
    cmd->add_option("--model", cfg.model_text,
                    "model descriptor: inline JSON or a path to a JSON file")
        ->required();
  };
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", cfg.out_dir, "output directory for CSVs");
    cmd->add_flag("--no-timestamp", cfg.no_timestamp,
                  "omit the timestamp header line (byte-identical reruns)");
    cmd->add_option("--seed", cfg.seed, "random seed");
  };

  CLI::App* exact = app.add_subcommand(
      "exact", "exact pmf, h table and moments at a fixed n");
  add_model(exact);
  add_common(exact);
  exact->add_option("--n", cfg.n, "permutation size")->required();
  exact->add_option("--budget", cfg.budget,
                    "largest n the exact command accepts (default 2000)");
  exact->add_option("--s-grid", cfg.s_grid,
                    "also report E exp(-sK) at these s")
      ->delimiter(',');

  CLI::App* asympt = app.add_subcommand(
      "asympt", "saddle-point moments over an n grid");
  add_model(asympt);
  add_common(asympt);
  asympt->add_option("--n-grid", cfg.n_grid, "comma separated n values")
      ->delimiter(',');

  CLI::App* sample = app.add_subcommand(
      "sample", "Monte Carlo cycle counts with splittable streams");
  add_model(sample);
  add_common(sample);
  sample->add_option("--n", cfg.n, "permutation size")->required();
  sample->add_option("--samples", cfg.samples, "number of samples");

  CLI::App* admissible = app.add_subcommand(
      "admissible", "log-admissibility report for a delta family");
  add_model(admissible);
  add_common(admissible);
  admissible->add_option("--delta", cfg.delta,
                         "arc width family, form:alpha (power:1.4, exp:0.4)");

  CLI::App* ldp = app.add_subcommand(
      "ldp", "large-deviation estimate for the normalized cycle count");
  add_model(ldp);
  add_common(ldp);
  ldp->add_option("--n", cfg.n, "permutation size")->required();
  ldp->add_option("--a", cfg.a, "deviation level");
  ldp->add_option("--eps", cfg.eps, "window half-width (> 1)");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the verification criteria (all by default)");
  verify->add_option("--suite", suites,
                     "suite names: oracle, mgf, hn, moments, clt, "
                     "admissibility, closed-forms, subexp, ldp, sampler")
      ->delimiter(',');
  verify->add_option("--out", report_path, "write a JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (exact->parsed()) return cmd_exact(cfg);
    if (asympt->parsed()) return cmd_asympt(cfg);
    if (sample->parsed()) return cmd_sample(cfg);
    if (admissible->parsed()) return cmd_admissible(cfg);
    if (ldp->parsed()) return cmd_ldp(cfg);
    if (verify->parsed()) return cmd_verify(suites, report_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
