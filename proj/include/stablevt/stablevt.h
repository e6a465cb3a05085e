/*
 * C interface to the stablevt library: tail-based estimation of symmetric
 * stable laws, confidence intervals, and the Monte Carlo harness.
 *
 * Every fallible call returns an svt_status. On failure a description is
 * available from svt_last_error_message() on the same thread until the next
 * call into the library. Handles are opaque and owned by the caller; release
 * them with the matching *_free function. A handle may be read from several
 * threads at once but must not be freed concurrently with use.
 */
#ifndef STABLEVT_STABLEVT_H_
#define STABLEVT_STABLEVT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(STABLEVT_BUILDING)
#    define SVT_API __declspec(dllexport)
#  else
#    define SVT_API __declspec(dllimport)
#  endif
#else
#  define SVT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum svt_status {
  SVT_OK = 0,
  SVT_ERR_INVALID_ARGUMENT = 1,
  SVT_ERR_DOMAIN = 2,
  SVT_ERR_DEGENERATE_SAMPLE = 3,
  SVT_ERR_INFINITE_MEAN_CORRECTION = 4,
  SVT_ERR_SINGULARITY = 5,
  SVT_ERR_UNBOUNDED_INTERVAL = 6,
  SVT_ERR_DEGENERATE_TRAJECTORY = 7,
  SVT_ERR_SELECTION_FAILURE = 8,
  SVT_ERR_EMPTY_SUMMARY = 9,
  SVT_ERR_NUMERICAL = 10,
  SVT_ERR_NOT_REQUESTED = 11,
  SVT_ERR_OUT_OF_MEMORY = 12,
  SVT_ERR_INTERNAL = 13
} svt_status;

typedef enum svt_target {
  SVT_TARGET_ALPHA = 0,
  SVT_TARGET_MU = 1,
  SVT_TARGET_SIGMA = 2
} svt_target;

#define SVT_TARGET_BIT(t) (1u << (unsigned)(t))
#define SVT_TARGETS_ALL 7u

typedef enum svt_lower_threshold {
  /* threshold at the k-th largest lower-tail magnitude (published form) */
  SVT_LOWER_THRESHOLD_KTH = 0,
  /* threshold at the (k+1)-th largest, as in the ordinary Hill estimator */
  SVT_LOWER_THRESHOLD_K_PLUS_ONE = 1
} svt_lower_threshold;

SVT_API const char* svt_version(void);
SVT_API const char* svt_status_name(svt_status status);
SVT_API const char* svt_last_error_message(void);

/* ---- estimation options ------------------------------------------------ */

typedef struct svt_options {
  double level;          /* confidence level 1 - a, in (0, 1) */
  double theta;          /* RT exponent, in [0, 0.5] */
  size_t k_min;          /* 0 selects the default */
  size_t k_max;          /* 0 selects the default */
  unsigned targets;      /* mask of SVT_TARGET_BIT(...) */
  int lower_threshold;   /* svt_lower_threshold */
} svt_options;

/* level 0.95, theta 0.3, default k range, all targets, published threshold */
SVT_API void svt_options_init(svt_options* options);

typedef struct svt_target_result {
  svt_status status;     /* SVT_OK when estimate and interval are valid */
  double estimate;       /* NaN unless status == SVT_OK */
  double ci_lower;
  double ci_upper;
} svt_target_result;

typedef struct svt_estimate_result {
  size_t n;
  size_t k_star;         /* 0 when no k could be selected */
  svt_target_result alpha;
  svt_target_result mu;
  svt_target_result sigma;
} svt_estimate_result;

/* Full estimation pipeline on observed data. Per-target failures are
 * reported in the result; the return value is non-OK only for invalid
 * options or unusable input. */
SVT_API svt_status svt_estimate(const double* data, size_t n,
                                const svt_options* options,
                                svt_estimate_result* out);

/* ---- sample handle ----------------------------------------------------- */

typedef struct svt_sample svt_sample;

SVT_API svt_status svt_sample_create(const double* data, size_t n,
                                     svt_sample** out);
SVT_API void svt_sample_free(svt_sample* sample);
SVT_API size_t svt_sample_size(const svt_sample* sample);
/* i-th order statistic, 1-based */
SVT_API svt_status svt_sample_order_stat(const svt_sample* sample, size_t i,
                                         double* out);
/* Hill estimate on |X| at k */
SVT_API svt_status svt_sample_hill(const svt_sample* sample, size_t k,
                                   double* out);
/* Hill estimates on |X| for k = 1..k_max; out must hold k_max values.
 * Entries with tied spacings are NaN. */
SVT_API svt_status svt_sample_hill_trajectory(const svt_sample* sample,
                                              size_t k_max, double* out);
SVT_API svt_status svt_sample_select_k(const svt_sample* sample, double theta,
                                       size_t k_min, size_t k_max,
                                       size_t* k_star);
SVT_API svt_status svt_sample_location(const svt_sample* sample, size_t k,
                                       int lower_threshold, double* out);
SVT_API svt_status svt_sample_scale(const svt_sample* sample, size_t k,
                                    double alpha_hat, double* out);

/* ---- stable law -------------------------------------------------------- */

SVT_API svt_status svt_tail_constant(double alpha, double* out);
SVT_API svt_status svt_density(double alpha, double sigma, double mu, double x,
                               double* out);
/* n draws of S_alpha(sigma, 0, mu) from a stream seeded with `seed` */
SVT_API svt_status svt_sample_stable(double alpha, double sigma, double mu,
                                     size_t n, uint64_t seed, double* out);

/* Hill trajectory of one simulated sample; out must hold k_max values. */
SVT_API svt_status svt_hill_plot(double alpha, double sigma, double mu,
                                 size_t n, size_t k_max, uint64_t seed,
                                 double* out);

/* ---- Monte Carlo experiment -------------------------------------------- */

typedef struct svt_experiment_config {
  double alpha;
  double sigma;
  double mu;
  size_t n;
  size_t reps;
  uint64_t master_seed;
  unsigned workers;      /* 0 = hardware concurrency */
  svt_options options;
} svt_experiment_config;

/* alpha 1.1, sigma 1, mu 0, n 3000, reps 1000, seed 42 */
SVT_API void svt_experiment_config_init(svt_experiment_config* config);

typedef struct svt_experiment svt_experiment;

typedef struct svt_summary_row {
  svt_target target;
  double true_value;
  double mean_estimate;
  double abs_bias;
  double mse;
  double ci_lower;
  double ci_upper;
  double length;
  double cov_prob;
  size_t valid_reps;
} svt_summary_row;

SVT_API svt_status svt_experiment_run(const svt_experiment_config* config,
                                      svt_experiment** out);
SVT_API void svt_experiment_free(svt_experiment* experiment);
SVT_API size_t svt_experiment_size(const svt_experiment* experiment);
SVT_API svt_status svt_experiment_replication(const svt_experiment* experiment,
                                              size_t index,
                                              svt_estimate_result* out);
SVT_API svt_status svt_experiment_summarize(const svt_experiment* experiment,
                                            svt_target target,
                                            svt_summary_row* out);

#ifdef __cplusplus
}
#endif

#endif /* STABLEVT_STABLEVT_H_ */
