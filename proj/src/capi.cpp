#include "stablevt/stablevt.h"

#include <cmath>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "stablevt/harness.hpp"

using namespace stablevt;

struct svt_sample {
  std::vector<double> raw;
  SortedSample sorted;
  SortedSample magnitudes;
};

struct svt_experiment {
  ExperimentConfig config;
  std::vector<ReplicationResult> results;
};

namespace {

thread_local std::string g_last_error;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

svt_status to_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return SVT_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDomain: return SVT_ERR_DOMAIN;
    case ErrorCode::kDegenerateSample: return SVT_ERR_DEGENERATE_SAMPLE;
    case ErrorCode::kInfiniteMeanCorrection: return SVT_ERR_INFINITE_MEAN_CORRECTION;
    case ErrorCode::kSingularity: return SVT_ERR_SINGULARITY;
    case ErrorCode::kUnboundedInterval: return SVT_ERR_UNBOUNDED_INTERVAL;
    case ErrorCode::kDegenerateTrajectory: return SVT_ERR_DEGENERATE_TRAJECTORY;
    case ErrorCode::kSelectionFailure: return SVT_ERR_SELECTION_FAILURE;
    case ErrorCode::kEmptySummary: return SVT_ERR_EMPTY_SUMMARY;
    case ErrorCode::kNumerical: return SVT_ERR_NUMERICAL;
  }
  return SVT_ERR_INTERNAL;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
svt_status guarded(Fn&& fn) noexcept {
  try {
    g_last_error.clear();
    fn();
    return SVT_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SVT_ERR_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SVT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return SVT_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::kInvalidArgument, what);
}

EstimationOptions to_options(const svt_options& o) {
  require(o.lower_threshold == SVT_LOWER_THRESHOLD_KTH ||
              o.lower_threshold == SVT_LOWER_THRESHOLD_K_PLUS_ONE,
          "unknown lower_threshold value");
  EstimationOptions opt;
  opt.level = o.level;
  opt.theta = o.theta;
  if (o.k_min != 0) opt.k_min = o.k_min;
  if (o.k_max != 0) opt.k_max = o.k_max;
  opt.targets = TargetSet::from_bits(o.targets);
  opt.lower_threshold = o.lower_threshold == SVT_LOWER_THRESHOLD_K_PLUS_ONE
                            ? LowerThreshold::kKPlusOne
                            : LowerThreshold::kKth;
  return opt;
}

svt_target_result to_result(const TargetOutcome& o) {
  svt_target_result r{SVT_ERR_NOT_REQUESTED, kNaN, kNaN, kNaN};
  if (o.valid() && o.interval) {
    r.status = SVT_OK;
    r.estimate = *o.estimate;
    r.ci_lower = o.interval->lower;
    r.ci_upper = o.interval->upper;
  } else if (o.failure) {
    r.status = to_status(*o.failure);
  }
  return r;
}

svt_estimate_result to_result(const SampleEstimate& e) {
  return {e.n, e.k_star, to_result(e.alpha), to_result(e.mu),
          to_result(e.sigma)};
}

Target to_target(svt_target t) {
  switch (t) {
    case SVT_TARGET_ALPHA: return Target::kAlpha;
    case SVT_TARGET_MU: return Target::kMu;
    case SVT_TARGET_SIGMA: return Target::kSigma;
  }
  fail(ErrorCode::kInvalidArgument, "unknown target");
}

}  // namespace

extern "C" {

const char* svt_version(void) { return "1.0.0"; }

const char* svt_status_name(svt_status status) {
  switch (status) {
    case SVT_OK: return "ok";
    case SVT_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SVT_ERR_DOMAIN: return "domain";
    case SVT_ERR_DEGENERATE_SAMPLE: return "degenerate_sample";
    case SVT_ERR_INFINITE_MEAN_CORRECTION: return "infinite_mean_correction";
    case SVT_ERR_SINGULARITY: return "singularity";
    case SVT_ERR_UNBOUNDED_INTERVAL: return "unbounded_interval";
    case SVT_ERR_DEGENERATE_TRAJECTORY: return "degenerate_trajectory";
    case SVT_ERR_SELECTION_FAILURE: return "selection_failure";
    case SVT_ERR_EMPTY_SUMMARY: return "empty_summary";
    case SVT_ERR_NUMERICAL: return "numerical";
    case SVT_ERR_NOT_REQUESTED: return "not_requested";
    case SVT_ERR_OUT_OF_MEMORY: return "out_of_memory";
    case SVT_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* svt_last_error_message(void) { return g_last_error.c_str(); }

void svt_options_init(svt_options* options) {
  if (!options) return;
  *options = {0.95, kDefaultTheta, 0, 0, SVT_TARGETS_ALL,
              SVT_LOWER_THRESHOLD_KTH};
}

svt_status svt_estimate(const double* data, size_t n,
                        const svt_options* options, svt_estimate_result* out) {
  return guarded([&] {
    require(data != nullptr || n == 0, "data is null");
    require(options != nullptr && out != nullptr, "null argument");
    *out = to_result(estimate_sample({data, n}, to_options(*options)));
  });
}

svt_status svt_sample_create(const double* data, size_t n, svt_sample** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    require(data != nullptr || n == 0, "data is null");
    *out = nullptr;
    std::vector<double> raw(data, data + n);
    SortedSample sorted(raw);
    SortedSample mags = SortedSample::magnitudes_of(raw);
    *out = new svt_sample{std::move(raw), std::move(sorted), std::move(mags)};
  });
}

void svt_sample_free(svt_sample* sample) { delete sample; }

size_t svt_sample_size(const svt_sample* sample) {
  return sample ? sample->raw.size() : 0;
}

svt_status svt_sample_order_stat(const svt_sample* sample, size_t i,
                                 double* out) {
  return guarded([&] {
    require(sample && out, "null argument");
    require(i >= 1 && i <= sample->sorted.size(), "index outside [1, n]");
    *out = sample->sorted.order_stat(i);
  });
}

svt_status svt_sample_hill(const svt_sample* sample, size_t k, double* out) {
  return guarded([&] {
    require(sample && out, "null argument");
    *out = hill_tail(sample->magnitudes, k).alpha_hat;
  });
}

svt_status svt_sample_hill_trajectory(const svt_sample* sample, size_t k_max,
                                      double* out) {
  return guarded([&] {
    require(sample && out, "null argument");
    const auto t = hill_trajectory(sample->magnitudes, k_max);
    std::copy(t.begin(), t.end(), out);
  });
}

svt_status svt_sample_select_k(const svt_sample* sample, double theta,
                               size_t k_min, size_t k_max, size_t* k_star) {
  return guarded([&] {
    require(sample && k_star, "null argument");
    const auto t = hill_trajectory(sample->magnitudes, k_max);
    *k_star = select_k_star(t, theta, k_min, k_max).k_star;
  });
}

svt_status svt_sample_location(const svt_sample* sample, size_t k,
                               int lower_threshold, double* out) {
  return guarded([&] {
    require(sample && out, "null argument");
    require(lower_threshold == SVT_LOWER_THRESHOLD_KTH ||
                lower_threshold == SVT_LOWER_THRESHOLD_K_PLUS_ONE,
            "unknown lower_threshold value");
    const auto conv = lower_threshold == SVT_LOWER_THRESHOLD_K_PLUS_ONE
                          ? LowerThreshold::kKPlusOne
                          : LowerThreshold::kKth;
    *out = peng_location(sample->sorted, k, conv).value;
  });
}

svt_status svt_sample_scale(const svt_sample* sample, size_t k,
                            double alpha_hat, double* out) {
  return guarded([&] {
    require(sample && out, "null argument");
    require(k >= 1 && k < sample->magnitudes.size(), "k outside [1, n-1]");
    *out = scale_estimate(sample->magnitudes.largest(k + 1), k,
                          sample->magnitudes.size(), alpha_hat);
  });
}

svt_status svt_tail_constant(double alpha, double* out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = tail_constant(alpha);
  });
}

svt_status svt_density(double alpha, double sigma, double mu, double x,
                       double* out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = density(StableParams(alpha, sigma, mu), x);
  });
}

svt_status svt_sample_stable(double alpha, double sigma, double mu, size_t n,
                             uint64_t seed, double* out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    RandomStream stream(seed);
    const auto draws = sample_symmetric(StableParams(alpha, sigma, mu), n, stream);
    std::copy(draws.begin(), draws.end(), out);
  });
}

svt_status svt_hill_plot(double alpha, double sigma, double mu, size_t n,
                         size_t k_max, uint64_t seed, double* out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    const auto rows =
        hill_plot_data(StableParams(alpha, sigma, mu), n, k_max, seed);
    for (std::size_t i = 0; i < rows.size(); ++i) out[i] = rows[i].alpha_hat;
  });
}

void svt_experiment_config_init(svt_experiment_config* config) {
  if (!config) return;
  config->alpha = 1.1;
  config->sigma = 1.0;
  config->mu = 0.0;
  config->n = 3000;
  config->reps = 1000;
  config->master_seed = 42;
  config->workers = 0;
  svt_options_init(&config->options);
}

svt_status svt_experiment_run(const svt_experiment_config* config,
                              svt_experiment** out) {
  return guarded([&] {
    require(config && out, "null argument");
    *out = nullptr;
    ExperimentConfig cfg{StableParams(config->alpha, config->sigma, config->mu),
                         config->n,
                         config->reps,
                         config->master_seed,
                         config->workers,
                         to_options(config->options)};
    auto results = run_experiment(cfg);
    *out = new svt_experiment{std::move(cfg), std::move(results)};
  });
}

void svt_experiment_free(svt_experiment* experiment) { delete experiment; }

size_t svt_experiment_size(const svt_experiment* experiment) {
  return experiment ? experiment->results.size() : 0;
}

svt_status svt_experiment_replication(const svt_experiment* experiment,
                                      size_t index, svt_estimate_result* out) {
  return guarded([&] {
    require(experiment && out, "null argument");
    require(index < experiment->results.size(), "replication index out of range");
    *out = to_result(experiment->results[index]);
  });
}

svt_status svt_experiment_summarize(const svt_experiment* experiment,
                                    svt_target target, svt_summary_row* out) {
  return guarded([&] {
    require(experiment && out, "null argument");
    const SummaryRow row = summarize(experiment->results,
                                     experiment->config.params, to_target(target));
    *out = {target,        row.true_value, row.mean_estimate, row.abs_bias,
            row.mse,       row.ci_lower,   row.ci_upper,      row.length,
            row.cov_prob,  row.valid_reps};
  });
}

}  // extern "C"
