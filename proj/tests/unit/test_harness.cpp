#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "stablevt/harness.hpp"

using namespace stablevt;

namespace {

bool same_outcome(const TargetOutcome& a, const TargetOutcome& b) {
  if (a.estimate != b.estimate || a.failure != b.failure) return false;
  if (a.interval.has_value() != b.interval.has_value()) return false;
  return !a.interval ||
         (a.interval->lower == b.interval->lower && a.interval->upper == b.interval->upper);
}

bool same_result(const ReplicationResult& a, const ReplicationResult& b) {
  return a.n == b.n && a.k_star == b.k_star && same_outcome(a.alpha, b.alpha) &&
         same_outcome(a.mu, b.mu) && same_outcome(a.sigma, b.sigma);
}

ExperimentConfig config(double alpha, double sigma, std::size_t n, std::size_t reps,
                        std::uint64_t seed = 42) {
  ExperimentConfig c;
  c.params = StableParams(alpha, sigma, 0.0);
  c.n = n;
  c.reps = reps;
  c.master_seed = seed;
  c.workers = 1;
  return c;
}

ReplicationResult with_alpha(double estimate, double lo, double hi) {
  ReplicationResult r;
  r.alpha.estimate = estimate;
  r.alpha.interval = ConfidenceInterval{lo, hi, 0.95, Target::kAlpha};
  return r;
}

}  // namespace

TEST_CASE("ExperimentConfig validation") {
  auto c = config(1.2, 0.5, 3000, 10);
  CHECK_NOTHROW(c.validate());
  c.reps = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = config(1.2, 0.5, 9, 10);
  CHECK_THROWS_AS(c.validate(), Error);
  c = config(1.2, 0.5, 3000, 10);
  c.estimation.level = 1.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = config(1.2, 0.5, 3000, 10);
  c.estimation.k_max = 3000;
  CHECK_THROWS_AS(c.validate(), Error);
  c = config(1.2, 0.5, 3000, 10);
  c.estimation.targets = TargetSet();
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("run_replication is deterministic and isolates failures") {
  const auto c = config(1.3, 0.5, 3000, 5);
  const auto a = run_replication(c, 3);
  const auto b = run_replication(c, 3);
  CHECK(same_result(a, b));
  CHECK_FALSE(same_result(a, run_replication(c, 4)));
  CHECK(a.k_star >= 60);
  CHECK(a.k_star <= 300);
  for (Target t : {Target::kAlpha, Target::kMu, Target::kSigma}) {
    const auto& o = a.outcome(t);
    CHECK(o.estimate.has_value() != o.failure.has_value());
    CHECK(o.estimate.has_value() == o.interval.has_value());
  }
  CHECK_THROWS_AS(run_replication(c, 5), Error);
}

TEST_CASE("all-positive sample keeps alpha but flags mu") {
  ExperimentConfig c;
  c.params = StableParams(1.5, 1.0, 1e6);
  c.n = 50;
  c.reps = 1;
  const auto r = run_replication(c, 0);
  CHECK(r.alpha.valid());
  CHECK(r.alpha.interval.has_value());
  REQUIRE(r.mu.failure.has_value());
  CHECK(*r.mu.failure == ErrorCode::kDomain);
  CHECK_FALSE(r.mu.valid());
}

TEST_CASE("alpha = 1.8 overestimation is flagged on scale and location") {
  const auto c = config(1.8, 1.0, 5000, 60, 7);
  const auto results = run_experiment(c);
  int above = 0;
  for (const auto& r : results) {
    REQUIRE(r.alpha.valid());
    if (*r.alpha.estimate >= 2.0) {
      ++above;
      CHECK(r.sigma.failure == ErrorCode::kDomain);
      CHECK(r.mu.failure.has_value());
    }
  }
  CHECK(above >= 20);
}

TEST_CASE("run_experiment does not depend on worker count or order") {
  auto c = config(1.2, 0.5, 1000, 24, 9);
  const auto serial = run_experiment(c);
  c.workers = 4;
  const auto parallel = run_experiment(c);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(same_result(serial[i], parallel[i]));
  }
  for (std::size_t i = serial.size(); i-- > 0;) {
    CHECK(same_result(run_replication(c, i), serial[i]));
  }

  auto one = config(1.2, 0.5, 1000, 1, 9);
  const auto single = run_experiment(one);
  REQUIRE(single.size() == 1);
  CHECK(same_result(single[0], run_replication(one, 0)));
}

TEST_CASE("summarize arithmetic") {
  const StableParams truth(1.1, 1.0);
  const std::vector<ReplicationResult> rs{with_alpha(1.0, 0.9, 1.2),
                                          with_alpha(1.2, 1.2, 1.3)};
  const auto row = summarize(rs, truth, Target::kAlpha);
  CHECK(row.abs_bias < 1e-15);
  CHECK(row.mse == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(row.cov_prob == 0.5);
  CHECK(row.valid_reps == 2);
  CHECK(row.ci_lower == doctest::Approx(1.05));
  CHECK(row.ci_upper == doctest::Approx(1.25));
  CHECK(row.length == row.ci_upper - row.ci_lower);

  std::vector<ReplicationResult> none(3);
  none[0].mu.failure = ErrorCode::kInfiniteMeanCorrection;
  try {
    summarize(none, truth, Target::kMu);
    FAIL("expected empty summary");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptySummary);
  }
}

TEST_CASE("summary rows are internally consistent") {
  const auto c = config(1.3, 1.0, 3000, 40, 3);
  const auto results = run_experiment(c);
  for (Target t : {Target::kAlpha, Target::kMu, Target::kSigma}) {
    const auto row = summarize(results, c.params, t);
    CHECK(row.length == row.ci_upper - row.ci_lower);
    const double hits = row.cov_prob * static_cast<double>(row.valid_reps);
    CHECK(std::abs(hits - std::round(hits)) < 1e-9);
    CHECK(row.valid_reps <= 40);
    CHECK(row.abs_bias == std::abs(row.mean_estimate - row.true_value));
  }
}

TEST_CASE("alpha bias grows with alpha") {
  double bias[3];
  const double alphas[3] = {1.1, 1.5, 1.8};
  for (int i = 0; i < 3; ++i) {
    auto c = config(alphas[i], 1.0, 3000, 200, 314);
    c.workers = 0;
    c.estimation.targets = TargetSet().with(Target::kAlpha);
    bias[i] = summarize(run_experiment(c), c.params, Target::kAlpha).abs_bias;
  }
  CHECK(bias[0] < bias[1]);
  CHECK(bias[1] < bias[2]);
}

TEST_CASE("hill_plot_data") {
  const auto rows = hill_plot_data(StableParams(1.1, 1.0), 5000, 500, 2024);
  REQUIRE(rows.size() == 500);
  CHECK(rows.front().k == 1);
  CHECK(rows.back().k == 500);
  int within = 0;
  for (std::size_t k = 150; k <= 500; ++k) {
    CHECK(rows[k - 1].true_alpha == 1.1);
    if (rows[k - 1].alpha_hat >= 1.0 && rows[k - 1].alpha_hat <= 1.25) ++within;
  }
  CHECK(within > 351 / 2);

  const auto heavy = hill_plot_data(StableParams(1.8, 1.0), 5000, 500, 2024);
  std::vector<double> mid;
  for (std::size_t k = 100; k <= 500; ++k) mid.push_back(heavy[k - 1].alpha_hat);
  std::nth_element(mid.begin(), mid.begin() + mid.size() / 2, mid.end());
  CHECK(mid[mid.size() / 2] > 1.9);

  CHECK_THROWS_AS(hill_plot_data(StableParams(1.1, 1.0), 100, 100, 1), Error);
}

TEST_CASE("density_figure_data") {
  const double alphas[] = {1.0, 2.0, 0.6, 1.5};
  const GridSpec grid{-5.0, 5.0, 0.5};
  const auto rows = density_figure_data(alphas, grid);
  REQUIRE(rows.size() == 4 * 21);
  for (const auto& r : rows) {
    if (r.alpha == 1.0) {
      CHECK(std::abs(r.density - oracle::cauchy_pdf(r.x, 0.0, 1.0)) < 1e-6);
    } else if (r.alpha == 2.0) {
      CHECK(std::abs(r.density - oracle::normal_pdf(r.x, 0.0, std::sqrt(2.0))) < 1e-6);
    }
  }
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t i = 0; i < 21; ++i) {
      CHECK(std::abs(rows[a * 21 + i].density - rows[a * 21 + 20 - i].density) <= 1e-10);
    }
  }
  const double bad[] = {0.3};
  CHECK_THROWS_AS(density_figure_data(bad, grid), Error);
  CHECK_THROWS_AS((GridSpec{1.0, 0.0, 0.1}.points()), Error);
  CHECK(GridSpec{0.0, 1.0, 0.1}.points().size() == 11);
}

TEST_CASE("estimate_sample on observed data") {
  RandomStream s(55);
  const auto x = sample_symmetric(StableParams(1.4, 2.0, 0.0), 3000, s);
  EstimationOptions opt;
  const auto est = estimate_sample(x, opt);
  CHECK(est.n == 3000);
  REQUIRE(est.alpha.valid());
  CHECK(*est.alpha.estimate > 1.0);
  CHECK(*est.alpha.estimate < 2.0);

  EstimationOptions narrow;
  narrow.k_min = 50;
  narrow.k_max = 50;
  CHECK(estimate_sample(x, narrow).k_star == 50);

  EstimationOptions only_sigma;
  only_sigma.targets = TargetSet().with(Target::kSigma);
  const auto s_only = estimate_sample(x, only_sigma);
  CHECK_FALSE(s_only.alpha.estimate.has_value());
  CHECK_FALSE(s_only.alpha.failure.has_value());
  CHECK(s_only.sigma.estimate == est.sigma.estimate);

  const std::vector<double> zeros(100, 0.0);
  const auto dead = estimate_sample(zeros, opt);
  CHECK(dead.k_star == 0);
  CHECK(dead.alpha.failure == ErrorCode::kDomain);
}
