#include "stablevt/harness.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace stablevt {
namespace {

template <typename Fn>
void fill_outcome(TargetOutcome& out, Fn&& compute) {
  try {
    auto [estimate, interval] = compute();
    out.estimate = estimate;
    out.interval = interval;
  } catch (const Error& e) {
    out.failure = e.code();
  }
}

void fail_requested(SampleEstimate& est, TargetSet targets, ErrorCode code) {
  if (targets.has(Target::kAlpha)) est.alpha.failure = code;
  if (targets.has(Target::kMu)) est.mu.failure = code;
  if (targets.has(Target::kSigma)) est.sigma.failure = code;
}

KRange resolve_range(const EstimationOptions& opt, std::size_t n) {
  const KRange def = default_k_range(n);
  KRange r{opt.k_min.value_or(def.k_min), opt.k_max.value_or(def.k_max)};
  if (!opt.k_min && opt.k_max) r.k_min = std::min(r.k_min, r.k_max);
  if (opt.k_min && !opt.k_max) r.k_max = std::max(r.k_max, r.k_min);
  if (r.k_min < 1 || r.k_min > r.k_max || r.k_max >= n) {
    std::ostringstream os;
    os << "k range [" << r.k_min << ", " << r.k_max
       << "] invalid for sample size " << n;
    fail(ErrorCode::kInvalidArgument, os.str());
  }
  return r;
}

void validate_options(const EstimationOptions& opt) {
  if (!(opt.level > 0.0 && opt.level < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "confidence level must lie in (0, 1)");
  }
  if (!(opt.theta >= 0.0 && opt.theta <= 0.5)) {
    fail(ErrorCode::kInvalidArgument, "theta must lie in [0, 0.5]");
  }
  if (opt.targets.empty()) {
    fail(ErrorCode::kInvalidArgument, "no estimation target requested");
  }
}

}  // namespace

const TargetOutcome& SampleEstimate::outcome(Target t) const noexcept {
  switch (t) {
    case Target::kAlpha: return alpha;
    case Target::kMu: return mu;
    case Target::kSigma: return sigma;
  }
  return alpha;
}

SampleEstimate estimate_sample(std::span<const double> data,
                               const EstimationOptions& options) {
  validate_options(options);
  const std::size_t n = data.size();
  if (n < 2) fail(ErrorCode::kInvalidArgument, "need at least two observations");
  const KRange range = resolve_range(options, n);

  const SortedSample x(std::vector<double>(data.begin(), data.end()));
  const SortedSample z = SortedSample::magnitudes_of(data);

  SampleEstimate est;
  est.n = n;
  std::vector<double> trajectory;
  try {
    trajectory = hill_trajectory(z, range.k_max);
    est.k_star =
        select_k_star(trajectory, options.theta, range.k_min, range.k_max).k_star;
  } catch (const Error& e) {
    fail_requested(est, options.targets, e.code());
    return est;
  }

  const std::size_t k = est.k_star;
  const double alpha_star = trajectory[k - 1];
  const double level = options.level;

  if (options.targets.has(Target::kAlpha)) {
    fill_outcome(est.alpha, [&] {
      return std::pair{alpha_star, ci_alpha(alpha_star, k, level)};
    });
  }
  if (options.targets.has(Target::kSigma)) {
    fill_outcome(est.sigma, [&] {
      const double s = scale_estimate(z.largest(k + 1), k, n, alpha_star);
      return std::pair{s, ci_scale(s, alpha_star, k, n, level)};
    });
  }
  if (options.targets.has(Target::kMu)) {
    fill_outcome(est.mu, [&] {
      const double m = peng_location(x, k, options.lower_threshold).value;
      const double delta = delta_factor(alpha_star);
      const double tau = tau_factor(x.order_stat(k), k, n, alpha_star);
      return std::pair{m, ci_location(m, delta, tau, n, level)};
    });
  }
  return est;
}

void ExperimentConfig::validate() const {
  if (reps < 1) fail(ErrorCode::kInvalidArgument, "reps must be >= 1");
  if (n < 10) fail(ErrorCode::kInvalidArgument, "n must be >= 10");
  validate_options(estimation);
  resolve_range(estimation, n);
}

ReplicationResult run_replication(const ExperimentConfig& config,
                                  std::size_t index) {
  if (index >= config.reps) {
    fail(ErrorCode::kInvalidArgument, "replication index out of range");
  }
  RandomStream stream = RandomStream::child(config.master_seed, index);
  const std::vector<double> sample =
      sample_symmetric(config.params, config.n, stream);
  return estimate_sample(sample, config.estimation);
}

std::vector<ReplicationResult> run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<ReplicationResult> results(config.reps);

  unsigned workers = config.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, config.reps));

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < config.reps; i = next++) {
      try {
        results[i] = run_replication(config, i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = config.reps;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return results;
}

SummaryRow summarize(std::span<const ReplicationResult> results,
                     const StableParams& truth, Target target) {
  double truth_value = 0.0;
  switch (target) {
    case Target::kAlpha: truth_value = truth.alpha(); break;
    case Target::kMu: truth_value = truth.mu(); break;
    case Target::kSigma: truth_value = truth.sigma(); break;
  }

  std::size_t valid = 0;
  std::size_t covered = 0;
  double sum = 0.0, sum_sq = 0.0, sum_lo = 0.0, sum_hi = 0.0;
  for (const auto& r : results) {
    const TargetOutcome& o = r.outcome(target);
    if (!o.valid() || !o.interval) continue;
    ++valid;
    const double dev = *o.estimate - truth_value;
    sum += *o.estimate;
    sum_sq += dev * dev;
    sum_lo += o.interval->lower;
    sum_hi += o.interval->upper;
    if (o.interval->contains(truth_value)) ++covered;
  }
  if (valid == 0) {
    std::ostringstream os;
    os << "no valid replications for target " << to_string(target);
    fail(ErrorCode::kEmptySummary, os.str());
  }

  const double v = static_cast<double>(valid);
  SummaryRow row{};
  row.target = target;
  row.true_value = truth_value;
  row.mean_estimate = sum / v;
  row.abs_bias = std::abs(row.mean_estimate - truth_value);
  row.mse = sum_sq / v;
  row.ci_lower = sum_lo / v;
  row.ci_upper = sum_hi / v;
  row.length = row.ci_upper - row.ci_lower;
  row.cov_prob = static_cast<double>(covered) / v;
  row.valid_reps = valid;
  return row;
}

std::vector<HillPlotRow> hill_plot_data(const StableParams& params,
                                        std::size_t n, std::size_t k_max,
                                        std::uint64_t seed) {
  if (k_max < 1 || n < k_max + 1) {
    std::ostringstream os;
    os << "hill plot needs 1 <= k_max <= n - 1, got k_max=" << k_max
       << " n=" << n;
    fail(ErrorCode::kInvalidArgument, os.str());
  }
  RandomStream stream(seed);
  const std::vector<double> sample = sample_symmetric(params, n, stream);
  const std::vector<double> trajectory =
      hill_trajectory(SortedSample::magnitudes_of(sample), k_max);
  std::vector<HillPlotRow> rows;
  rows.reserve(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) {
    rows.push_back({k, trajectory[k - 1], params.alpha()});
  }
  return rows;
}

std::vector<double> GridSpec::points() const {
  if (!(step > 0.0) || !std::isfinite(lower) || !std::isfinite(upper) ||
      !(upper >= lower)) {
    fail(ErrorCode::kInvalidArgument,
         "grid needs finite lower <= upper and a positive step");
  }
  const double span = (upper - lower) / step;
  if (span > 1e7) fail(ErrorCode::kInvalidArgument, "grid has too many points");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-6)) + 1;
  std::vector<double> pts(count);
  for (std::size_t i = 0; i < count; ++i) {
    pts[i] = lower + static_cast<double>(i) * step;
  }
  return pts;
}

std::vector<DensityRow> density_figure_data(std::span<const double> alphas,
                                            const GridSpec& grid) {
  for (double a : alphas) {
    if (!(a > 0.3 && a <= 2.0)) {
      std::ostringstream os;
      os << "density figure supports alpha in (0.3, 2], got " << a;
      fail(ErrorCode::kInvalidArgument, os.str());
    }
  }
  const std::vector<double> xs = grid.points();
  std::vector<DensityRow> rows;
  rows.reserve(xs.size() * alphas.size());
  for (double a : alphas) {
    const StableParams params(a, 1.0, 0.0);
    for (double x : xs) rows.push_back({x, a, density(params, x)});
  }
  return rows;
}

}  // namespace stablevt
