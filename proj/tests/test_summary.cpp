#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pairlik/rng.hpp"
#include "pairlik/summary.hpp"
#include "pairlik/types.hpp"

using namespace pairlik;

TEST_CASE("type-7 quantiles") {
  const std::vector<double> v = {1, 2, 3, 4, 5};
  CHECK(quantile_sorted(v, 0.25) == 2.0);
  CHECK(quantile_sorted(v, 0.5) == 3.0);
  CHECK(quantile_sorted(v, 0.0) == 1.0);
  CHECK(quantile_sorted(v, 1.0) == 5.0);
  CHECK(quantile_sorted(v, 0.1) == doctest::Approx(1.4));
  const std::vector<double> two = {0, 10};
  CHECK(quantile_sorted(two, 0.95) == doctest::Approx(9.5));
}

TEST_CASE("summary statistics") {
  const std::vector<double> v = {5, 1, 4, 2, 3};
  const SampleSummary s = summarize(v);
  CHECK(s.count == 5);
  CHECK(s.mean == 3.0);
  CHECK(s.variance == doctest::Approx(2.5));
  CHECK(s.q50 == 3.0);
  CHECK(s.q25 == 2.0);
  // m4 / m2^2 - 3 with divisor m: m2 = 2, m4 = 6.8
  CHECK(s.kurtosis == doctest::Approx(6.8 / 4.0 - 3.0));
  CHECK_THROWS_AS(summarize(std::vector<double>{1.0}), InsufficientSamples);
}

TEST_CASE("pairwise sum is accurate and order-fixed") {
  std::vector<double> v(1000, 0.1);
  CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  std::vector<double> mixed = {1e16, 1.0, -1e16, 1.0};
  CHECK(std::isfinite(pairwise_sum(mixed)));
}

TEST_CASE("histogram counts and clamps") {
  const std::vector<double> v = {-10, -0.5, 0.0, 0.49, 0.5, 10};
  const auto h = histogram(v, -1.0, 1.0, 2);
  REQUIRE(h.size() == 2);
  // Values outside [lo, hi) land in the edge bins.
  CHECK(h[0] == 2);
  CHECK(h[1] == 4);
  CHECK_THROWS_AS(histogram(v, 1.0, 1.0, 2), std::invalid_argument);
}

TEST_CASE("standard normal pseudo-sample moments") {
  RngStream rng(99);
  std::vector<double> v(1000000);
  for (auto& x : v) x = rng.normal();
  const SampleSummary s = summarize(v);
  CHECK(std::abs(s.mean) < 0.02);
  CHECK(std::abs(s.variance - 1.0) < 0.02);
  CHECK(std::abs(s.kurtosis) < 0.02);
  CHECK(s.q05 <= s.q25);
  CHECK(s.q25 <= s.q50);
  CHECK(s.q50 <= s.q75);
  CHECK(s.q75 <= s.q95);
}
