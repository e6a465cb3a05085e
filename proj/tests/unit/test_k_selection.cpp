#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "stablevt/error.hpp"
#include "stablevt/k_selection.hpp"
#include "stablevt/stable.hpp"

using namespace stablevt;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected stablevt::Error");
  return ErrorCode::kNumerical;
}

std::vector<double> pareto(std::size_t n, double alpha, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = std::pow(1.0 - u(gen), -1.0 / alpha);
  return v;
}

}  // namespace

TEST_CASE("default k range") {
  CHECK(default_k_range(3000).k_min == 60);
  CHECK(default_k_range(3000).k_max == 300);
  CHECK(default_k_range(200).k_min == 15);
  CHECK(default_k_range(200).k_max == 20);
  CHECK(default_k_range(10).k_min == 9);
  CHECK(default_k_range(10).k_max == 9);
}

TEST_CASE("hill_trajectory small exact case") {
  const SortedSample geo({1.0, std::numbers::e, std::numbers::e * std::numbers::e});
  const auto t = hill_trajectory(geo, 2);
  REQUIRE(t.size() == 2);
  CHECK(t[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(code_of([&] { hill_trajectory(geo, 3); }) == ErrorCode::kDomain);
  CHECK(code_of([&] { hill_trajectory(geo, 0); }) == ErrorCode::kDomain);
}

TEST_CASE("hill_trajectory matches per-k recomputation") {
  const auto data = pareto(1000, 1.5, 3);
  const SortedSample mags(data);
  const auto t = hill_trajectory(mags, 500);
  for (std::size_t k = 1; k <= 500; ++k) {
    CHECK(std::abs(t[k - 1] - hill_tail(mags, k).alpha_hat) <= 1e-12);
    CHECK(std::abs(t[k - 1] - oracle::naive_hill(data, k)) <=
          1e-12 * std::max(1.0, t[k - 1]));
  }
}

TEST_CASE("hill_trajectory marks tied spacings as NaN") {
  const SortedSample flat({1.0, 2.0, 2.0, 2.0});
  const auto f = hill_trajectory(flat, 2);
  CHECK(std::isnan(f[0]));
  CHECK(std::isnan(f[1]));
}

TEST_CASE("hill_trajectory is linear time") {
  const std::size_t n = 1000000;
  const SortedSample mags(pareto(n, 1.2, 4));
  const auto start = std::chrono::steady_clock::now();
  const auto t = hill_trajectory(mags, n - 1);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(t.size() == n - 1);
  CHECK(secs < 1.0);
}

TEST_CASE("rt_statistic") {
  const std::vector<double> any{1.7, 0.4, 9.0};
  for (double theta : {0.0, 0.3, 0.5}) CHECK(rt_statistic(any, 1, theta) == 0.0);

  const std::vector<double> two{1.0, 2.0};
  CHECK(rt_statistic(two, 2, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rt_statistic(two, 2, 0.3) ==
        doctest::Approx(0.557786103336229071).epsilon(1e-14));

  const std::vector<double> bad{1.0, NAN, 2.0};
  CHECK(code_of([&] { rt_statistic(bad, 2, 0.3); }) ==
        ErrorCode::kDegenerateTrajectory);
  CHECK(rt_statistic(bad, 1, 0.3) == 0.0);
  CHECK(code_of([&] { rt_statistic(two, 3, 0.3); }) == ErrorCode::kDomain);
  CHECK(code_of([&] { rt_statistic(two, 2, 0.6); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("rt_statistic equals a brute-force evaluation (property)") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> traj(1 + gen() % 120);
    for (double& v : traj) v = u(gen);
    const std::size_t k = 1 + gen() % traj.size();
    for (double theta : {0.0, 0.3, 0.5}) {
      CHECK(rt_statistic(traj, k, theta) ==
            doctest::Approx(oracle::naive_rt(traj, k, theta)).epsilon(1e-12));
    }
    // theta = 0 is the mean absolute deviation from the median.
    std::vector<double> head(traj.begin(), traj.begin() + static_cast<long>(k));
    std::sort(head.begin(), head.end());
    const double med = k % 2 ? head[k / 2] : 0.5 * (head[k / 2 - 1] + head[k / 2]);
    double mad = 0.0;
    for (double v : head) mad += std::abs(v - med);
    CHECK(rt_statistic(traj, k, 0.0) ==
          doctest::Approx(mad / static_cast<double>(k)).epsilon(1e-12));
  }
}

TEST_CASE("select_k_star") {
  SUBCASE("constant trajectory ties to k_min") {
    const std::vector<double> flat(50, 1.3);
    const auto sel = select_k_star(flat, 0.3, 7, 40);
    CHECK(sel.k_star == 7);
    CHECK(sel.rt_values.size() == 34);
    for (double v : sel.rt_values) CHECK(v == 0.0);
  }
  SUBCASE("brute-force minimum") {
    const std::vector<double> traj{1, 2, 2, 2, 2};
    const auto sel = select_k_star(traj, 0.0, 1, 5);
    std::size_t best = 1;
    for (std::size_t k = 1; k <= 5; ++k) {
      if (oracle::naive_rt(traj, k, 0.0) < oracle::naive_rt(traj, best, 0.0)) best = k;
    }
    CHECK(sel.k_star == best);
    const auto from2 = select_k_star(traj, 0.0, 2, 5);
    best = 2;
    for (std::size_t k = 2; k <= 5; ++k) {
      if (oracle::naive_rt(traj, k, 0.0) < oracle::naive_rt(traj, best, 0.0)) best = k;
    }
    CHECK(from2.k_star == best);
    CHECK(from2.rt(from2.k_star) <= from2.rt(2));
  }
  SUBCASE("invariant: rt at k_star is the minimum") {
    const auto t = hill_trajectory(SortedSample(pareto(3000, 1.2, 9)), 300);
    const auto sel = select_k_star(t, 0.3, 60, 300);
    CHECK(sel.k_star >= 60);
    CHECK(sel.k_star <= 300);
    for (std::size_t k = 60; k <= 300; ++k) {
      CHECK(sel.rt(sel.k_star) <= sel.rt(k));
      if (k < sel.k_star) CHECK(sel.rt(sel.k_star) < sel.rt(k));
    }
  }
  SUBCASE("non-finite prefixes are skipped") {
    std::vector<double> t{1.0, 1.5, 1.2, NAN, 1.1};
    const auto sel = select_k_star(t, 0.3, 2, 5);
    CHECK(sel.k_star <= 3);
    CHECK(std::isnan(sel.rt(4)));
    CHECK(std::isnan(sel.rt(5)));
    std::vector<double> dead{NAN, 1.0, 1.0};
    CHECK(code_of([&] { select_k_star(dead, 0.3, 1, 3); }) ==
          ErrorCode::kSelectionFailure);
  }
  SUBCASE("argument checks") {
    const std::vector<double> t{1.0, 1.0};
    CHECK(code_of([&] { select_k_star(t, 0.3, 0, 2); }) == ErrorCode::kDomain);
    CHECK(code_of([&] { select_k_star(t, 0.3, 2, 1); }) == ErrorCode::kDomain);
    CHECK(code_of([&] { select_k_star(t, 0.3, 1, 3); }) == ErrorCode::kDomain);
    CHECK(code_of([&] { select_k_star(t, -0.1, 1, 2); }) ==
          ErrorCode::kInvalidArgument);
  }
}

TEST_CASE("k selection is invariant under rescaling of the data") {
  RandomStream stream(21);
  auto x = sample_symmetric(StableParams(1.3, 1.0, 0.0), 3000, stream);
  const auto t1 = hill_trajectory(SortedSample::magnitudes_of(x), 300);
  for (double& v : x) v *= 8.0;  // power of two: log spacings unchanged exactly
  const auto t2 = hill_trajectory(SortedSample::magnitudes_of(x), 300);
  CHECK(select_k_star(t1, 0.3, 60, 300).k_star == select_k_star(t2, 0.3, 60, 300).k_star);
}

TEST_CASE("k_star lands in the stable Hill region for alpha = 1.1") {
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomStream stream = RandomStream::child(1100, seed);
    const auto x = sample_symmetric(StableParams(1.1, 1.0, 0.0), 5000, stream);
    const KRange range = default_k_range(x.size());
    const auto t = hill_trajectory(SortedSample::magnitudes_of(x), range.k_max);
    const auto sel = select_k_star(t, kDefaultTheta, range.k_min, range.k_max);
    if (sel.k_star >= 150 && sel.k_star <= 500) ++inside;
  }
  CHECK(inside >= 60);
}
