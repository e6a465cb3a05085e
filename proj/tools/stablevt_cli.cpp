// Command-line front end for the stablevt C API. Data goes to --out (or
// stdout) as CSV; diagnostics go to stderr.
//
// Exit status: 0 success, 1 estimation or data error, 2 usage error.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "stablevt/stablevt.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitEstimation = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  std::string out_path;
  int precision = 6;
};

std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::out | std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

const char* target_name(svt_target t) {
  switch (t) {
    case SVT_TARGET_ALPHA: return "alpha";
    case SVT_TARGET_MU: return "mu";
    case SVT_TARGET_SIGMA: return "sigma";
  }
  return "?";
}

void report(svt_status status, std::string_view context) {
  std::cerr << "error: " << context << ": " << svt_status_name(status);
  const std::string_view msg = svt_last_error_message();
  if (!msg.empty()) std::cerr << " (" << msg << ")";
  std::cerr << "\n";
}

const CLI::Validator kPositive(
    [](const std::string& s) -> std::string {
      double v = 0.0;
      if (!CLI::detail::lexical_cast(s, v) || !(v > 0.0) || !std::isfinite(v)) {
        return "value must be a positive finite number";
      }
      return {};
    },
    "POSITIVE");

const CLI::Validator kStabilityIndex(
    [](const std::string& s) -> std::string {
      double v = 0.0;
      if (!CLI::detail::lexical_cast(s, v) || !(v > 0.0 && v <= 2.0)) {
        return "stability index must lie in (0, 2]";
      }
      return {};
    },
    "(0,2]");

const CLI::Validator kOpenUnit(
    [](const std::string& s) -> std::string {
      double v = 0.0;
      if (!CLI::detail::lexical_cast(s, v) || !(v > 0.0 && v < 1.0)) {
        return "value must lie in (0, 1)";
      }
      return {};
    },
    "(0,1)");

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--out", flags.out_path, "Output CSV path (default stdout)");
  cmd->add_option("--precision", flags.precision, "Significant digits")
      ->check(CLI::Range(1, 17));
}

int lower_threshold_value(const std::string& s) {
  return s == "k-plus-one" ? SVT_LOWER_THRESHOLD_K_PLUS_ONE
                           : SVT_LOWER_THRESHOLD_KTH;
}

// ---- simulate --------------------------------------------------------------

struct SimulateFlags {
  CommonFlags common;
  double alpha = 0.0;
  double sigma = 1.0;
  double mu = 0.0;
  std::size_t n = 3000;
  std::size_t reps = 1000;
  double level = 0.95;
  double theta = 0.3;
  std::size_t k_min = 0;
  std::size_t k_max = 0;
  std::uint64_t seed = 42;
  unsigned workers = 0;
  std::vector<std::string> targets{"alpha", "mu", "sigma"};
  std::string lower_threshold = "kth";
};

int run_simulate(const SimulateFlags& f) {
  svt_experiment_config cfg;
  svt_experiment_config_init(&cfg);
  cfg.alpha = f.alpha;
  cfg.sigma = f.sigma;
  cfg.mu = f.mu;
  cfg.n = f.n;
  cfg.reps = f.reps;
  cfg.master_seed = f.seed;
  cfg.workers = f.workers;
  cfg.options.level = f.level;
  cfg.options.theta = f.theta;
  cfg.options.k_min = f.k_min;
  cfg.options.k_max = f.k_max;
  cfg.options.lower_threshold = lower_threshold_value(f.lower_threshold);

  std::vector<svt_target> targets;
  cfg.options.targets = 0;
  for (svt_target t : {SVT_TARGET_ALPHA, SVT_TARGET_MU, SVT_TARGET_SIGMA}) {
    for (const auto& name : f.targets) {
      if (name == target_name(t)) {
        cfg.options.targets |= SVT_TARGET_BIT(t);
        targets.push_back(t);
        break;
      }
    }
  }

  svt_experiment* raw = nullptr;
  if (svt_status st = svt_experiment_run(&cfg, &raw); st != SVT_OK) {
    report(st, "simulate");
    return st == SVT_ERR_INVALID_ARGUMENT ? kExitUsage : kExitEstimation;
  }
  std::unique_ptr<svt_experiment, decltype(&svt_experiment_free)> exp(
      raw, svt_experiment_free);

  Output out(f.common.out_path);
  std::ostream& os = out.stream();
  const int p = f.common.precision;
  os << "target,true_value,mean_estimate,abs_bias,mse,ci_lower,ci_upper,"
        "length,cov_prob,valid_reps\n";
  int code = kExitOk;
  for (svt_target t : targets) {
    svt_summary_row row;
    const svt_status st = svt_experiment_summarize(exp.get(), t, &row);
    if (st != SVT_OK) {
      report(st, std::string("summary for ") + target_name(t));
      const double truth = t == SVT_TARGET_ALPHA ? f.alpha
                           : t == SVT_TARGET_MU  ? f.mu
                                                 : f.sigma;
      os << target_name(t) << ',' << format_number(truth, p)
         << ",,,,,,,,0\n";
      code = kExitEstimation;
      continue;
    }
    os << target_name(t) << ',' << format_number(row.true_value, p) << ','
       << format_number(row.mean_estimate, p) << ','
       << format_number(row.abs_bias, p) << ',' << format_number(row.mse, p)
       << ',' << format_number(row.ci_lower, p) << ','
       << format_number(row.ci_upper, p) << ',' << format_number(row.length, p)
       << ',' << format_number(row.cov_prob, p) << ',' << row.valid_reps
       << '\n';
  }
  return code;
}

// ---- estimate --------------------------------------------------------------

struct EstimateFlags {
  CommonFlags common;
  std::string input;
  double level = 0.95;
  double theta = 0.3;
  std::size_t k_min = 0;
  std::size_t k_max = 0;
  std::string lower_threshold = "kth";
};

// One finite real per line; blank lines skipped.
std::vector<double> read_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file " + path);
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string_view token(line.data() + first, last - first + 1);
    double v = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    if (*begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
      std::ostringstream os;
      os << path << ":" << line_no << ": not a finite real: '" << token << "'";
      throw std::runtime_error(os.str());
    }
    values.push_back(v);
  }
  return values;
}

int run_estimate(const EstimateFlags& f) {
  std::vector<double> data;
  try {
    data = read_values(f.input);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEstimation;
  }

  svt_options opt;
  svt_options_init(&opt);
  opt.level = f.level;
  opt.theta = f.theta;
  opt.k_min = f.k_min;
  opt.k_max = f.k_max;
  opt.lower_threshold = lower_threshold_value(f.lower_threshold);

  svt_estimate_result res;
  if (svt_status st = svt_estimate(data.data(), data.size(), &opt, &res);
      st != SVT_OK) {
    report(st, "estimate");
    return kExitEstimation;
  }

  Output out(f.common.out_path);
  std::ostream& os = out.stream();
  const int p = f.common.precision;
  os << "target,estimate,ci_lower,ci_upper,k_star,n\n";
  int code = kExitOk;
  const std::pair<svt_target, const svt_target_result*> rows[] = {
      {SVT_TARGET_ALPHA, &res.alpha},
      {SVT_TARGET_MU, &res.mu},
      {SVT_TARGET_SIGMA, &res.sigma}};
  for (const auto& [t, r] : rows) {
    os << target_name(t) << ',';
    if (r->status == SVT_OK) {
      os << format_number(r->estimate, p) << ','
         << format_number(r->ci_lower, p) << ','
         << format_number(r->ci_upper, p);
    } else {
      std::cerr << "error: " << target_name(t) << ": "
                << svt_status_name(r->status) << "\n";
      os << ",,";
      code = kExitEstimation;
    }
    os << ',' << res.k_star << ',' << res.n << '\n';
  }
  return code;
}

// ---- hill-plot -------------------------------------------------------------

struct HillPlotFlags {
  CommonFlags common;
  double alpha = 0.0;
  double sigma = 1.0;
  double mu = 0.0;
  std::size_t n = 5000;
  std::size_t k_max = 0;
  std::uint64_t seed = 42;
};

int run_hill_plot(const HillPlotFlags& f) {
  const std::size_t k_max = f.k_max != 0 ? f.k_max : std::min<std::size_t>(500, f.n - 1);
  if (k_max + 1 > f.n) {
    std::cerr << "error: --k-max must be below --n\n";
    return kExitUsage;
  }
  std::vector<double> traj(k_max);
  if (svt_status st = svt_hill_plot(f.alpha, f.sigma, f.mu, f.n, k_max, f.seed,
                                    traj.data());
      st != SVT_OK) {
    report(st, "hill-plot");
    return kExitEstimation;
  }
  Output out(f.common.out_path);
  std::ostream& os = out.stream();
  const int p = f.common.precision;
  os << "k,alpha_hat,true_alpha\n";
  for (std::size_t k = 1; k <= k_max; ++k) {
    os << k << ',' << format_number(traj[k - 1], p) << ','
       << format_number(f.alpha, p) << '\n';
  }
  return kExitOk;
}

// ---- density ---------------------------------------------------------------

struct DensityFlags {
  CommonFlags common;
  std::vector<double> alphas{0.6, 1.0, 1.5, 2.0};
  std::string grid = "-5:5:0.1";
};

bool parse_grid(const std::string& spec, double& lo, double& hi, double& step) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    double v = 0.0;
    if (!CLI::detail::lexical_cast(item, v) || !std::isfinite(v)) return false;
    parts.push_back(v);
  }
  if (parts.size() != 3) return false;
  lo = parts[0];
  hi = parts[1];
  step = parts[2];
  return step > 0.0 && hi >= lo && (hi - lo) / step <= 1e7;
}

int run_density(const DensityFlags& f) {
  double lo = 0.0, hi = 0.0, step = 0.0;
  if (!parse_grid(f.grid, lo, hi, step)) {
    std::cerr << "error: --grid must be LOWER:UPPER:STEP with STEP > 0\n";
    return kExitUsage;
  }
  for (double a : f.alphas) {
    if (!(a > 0.3 && a <= 2.0)) {
      std::cerr << "error: --alphas entries must lie in (0.3, 2]\n";
      return kExitUsage;
    }
  }
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-6)) + 1;
  std::ostringstream buf;
  const int p = f.common.precision;
  buf << "x,alpha,density\n";
  for (double a : f.alphas) {
    for (std::size_t i = 0; i < count; ++i) {
      const double x = lo + static_cast<double>(i) * step;
      double d = 0.0;
      if (svt_status st = svt_density(a, 1.0, 0.0, x, &d); st != SVT_OK) {
        report(st, "density");
        return kExitEstimation;
      }
      buf << format_number(x, p) << ',' << format_number(a, p) << ','
          << format_number(d, p) << '\n';
    }
  }
  Output out(f.common.out_path);
  out.stream() << buf.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tail-based estimation for symmetric stable distributions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(svt_version()));

  const auto thresholds =
      CLI::IsMember({std::string("kth"), std::string("k-plus-one")});

  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo coverage study");
  simulate->add_option("--alpha", sim.alpha, "Stability index")
      ->required()
      ->check(kStabilityIndex);
  simulate->add_option("--sigma", sim.sigma, "Scale")->check(kPositive);
  simulate->add_option("--mu", sim.mu, "Location");
  simulate->add_option("--n", sim.n, "Sample size")->check(CLI::Range(10, 100000000));
  simulate->add_option("--reps", sim.reps, "Replications")->check(CLI::Range(1, 100000000));
  simulate->add_option("--level", sim.level, "Confidence level")->check(kOpenUnit);
  simulate->add_option("--theta", sim.theta, "RT exponent")->check(CLI::Range(0.0, 0.5));
  simulate->add_option("--k-min", sim.k_min, "Smallest k searched")->check(CLI::PositiveNumber);
  simulate->add_option("--k-max", sim.k_max, "Largest k searched")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--workers", sim.workers, "Worker threads (0 = all cores)");
  simulate->add_option("--targets", sim.targets, "Subset of alpha,mu,sigma")
      ->delimiter(',')
      ->check(CLI::IsMember({std::string("alpha"), std::string("mu"), std::string("sigma")}));
  simulate->add_option("--lower-threshold", sim.lower_threshold,
                       "Lower-tail threshold convention")
      ->check(thresholds);
  add_common(simulate, sim.common);

  EstimateFlags est;
  auto* estimate = app.add_subcommand("estimate", "Estimate parameters of a data file");
  estimate->add_option("--input", est.input, "One real per line")->required();
  estimate->add_option("--level", est.level, "Confidence level")->check(kOpenUnit);
  estimate->add_option("--theta", est.theta, "RT exponent")->check(CLI::Range(0.0, 0.5));
  estimate->add_option("--k-min", est.k_min, "Smallest k searched")->check(CLI::PositiveNumber);
  estimate->add_option("--k-max", est.k_max, "Largest k searched")->check(CLI::PositiveNumber);
  estimate->add_option("--lower-threshold", est.lower_threshold,
                       "Lower-tail threshold convention")
      ->check(thresholds);
  add_common(estimate, est.common);

  HillPlotFlags hp;
  auto* hill = app.add_subcommand("hill-plot", "Hill trajectory of one simulated sample");
  hill->add_option("--alpha", hp.alpha, "Stability index")
      ->required()
      ->check(kStabilityIndex);
  hill->add_option("--sigma", hp.sigma, "Scale")->check(kPositive);
  hill->add_option("--mu", hp.mu, "Location");
  hill->add_option("--n", hp.n, "Sample size")->check(CLI::Range(2, 100000000));
  hill->add_option("--k-max", hp.k_max, "Largest k (default min(500, n-1))")
      ->check(CLI::PositiveNumber);
  hill->add_option("--seed", hp.seed, "Seed");
  add_common(hill, hp.common);

  DensityFlags dens;
  auto* density = app.add_subcommand("density", "Symmetric stable densities on a grid");
  density->add_option("--alphas", dens.alphas, "Comma-separated stability indices")
      ->delimiter(',');
  density->add_option("--grid", dens.grid, "LOWER:UPPER:STEP");
  add_common(density, dens.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return kExitUsage;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*estimate) return run_estimate(est);
    if (*hill) return run_hill_plot(hp);
    if (*density) return run_density(dens);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEstimation;
  }
  return kExitUsage;
}
