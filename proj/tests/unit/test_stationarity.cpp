#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tsfit/errors.hpp"
#include "tsfit/numeric.hpp"
#include "tsfit/series.hpp"
#include "tsfit/stationarity.hpp"

using namespace tsfit;

namespace {

std::vector<double> random_walk(std::uint64_t seed, std::size_t n) {
  num::Rng rng(seed);
  std::vector<double> x(n);
  double acc = 0.0;
  for (double& v : x) {
    acc += rng.normal();
    v = acc;
  }
  return x;
}

std::vector<double> white_noise(std::uint64_t seed, std::size_t n) {
  num::Rng rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = rng.normal();
  return x;
}

}  // namespace

TEST_CASE("adf: shift and scale invariance of the statistic") {
  std::vector<double> x = white_noise(8, 300);
  AdfResult base = adf_test(make_series(x));

  std::vector<double> shifted(x.size()), scaled(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    shifted[i] = x[i] + 1234.5;
    scaled[i] = 17.25 * x[i];
  }
  CHECK(adf_test(make_series(shifted)).statistic == doctest::Approx(base.statistic).epsilon(1e-8));
  CHECK(adf_test(make_series(scaled)).statistic == doctest::Approx(base.statistic).epsilon(1e-8));
}

TEST_CASE("adf: default lag order") {
  // floor((n-1)^(1/3)): n=425 -> 7, n=1000 -> 9
  std::vector<double> x = white_noise(9, 425);
  CHECK(adf_test(make_series(x)).lag_order == 7);
  std::vector<double> y = white_noise(10, 1000);
  CHECK(adf_test(make_series(y)).lag_order == 9);
}

TEST_CASE("adf: white noise strongly rejects, random walk does not") {
  AdfResult noise = adf_test(make_series(white_noise(100, 1000)));
  CHECK(noise.p_value == 0.01);
  CHECK(noise.clamped == AdfResult::Clamp::low);
  CHECK(is_stationary(noise, 0.05));

  int high_p = 0;
  for (int seed = 0; seed < 10; ++seed) {
    AdfResult walk = adf_test(make_series(random_walk(200 + seed, 1000)));
    if (walk.p_value > 0.10) ++high_p;
  }
  CHECK(high_p >= 8);
}

TEST_CASE("adf: trending explosive series clamps high") {
  num::Rng rng(77);
  std::vector<double> x(200);
  double v = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    v *= 1.05;
    x[i] = v + 0.01 * rng.normal();
  }
  AdfResult r = adf_test(make_series(x));
  CHECK(r.p_value == 0.99);
  CHECK(r.clamped == AdfResult::Clamp::high);
}

TEST_CASE("adf: p-value interpolation tracks the table ordering") {
  // collect (statistic, p) pairs at a fixed sample size; p must be
  // non-decreasing in the statistic
  std::vector<std::pair<double, double>> pairs;
  for (int seed = 0; seed < 30; ++seed) {
    AdfResult r = adf_test(make_series(random_walk(300 + seed, 200)));
    pairs.emplace_back(r.statistic, r.p_value);
  }
  for (int seed = 0; seed < 10; ++seed) {
    AdfResult r = adf_test(make_series(white_noise(400 + seed, 200)));
    pairs.emplace_back(r.statistic, r.p_value);
  }
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    CHECK(pairs[i].second >= pairs[i - 1].second);
  }
  // interior interpolation stays inside the clamp range
  for (auto [stat, p] : pairs) {
    CHECK(p >= 0.01);
    CHECK(p <= 0.99);
  }
}

TEST_CASE("adf: errors") {
  CHECK_THROWS_AS(adf_test(make_series(white_noise(1, 12)), 5), SeriesTooShort);
  std::vector<double> constant(60, 4.0);
  CHECK_THROWS_AS(adf_test(make_series(constant)), SingularRegression);
}

TEST_CASE("is_stationary: strict inequality at alpha") {
  AdfResult r;
  r.p_value = 0.829;
  CHECK(!is_stationary(r, 0.05));
  r.p_value = 0.01;
  CHECK(is_stationary(r, 0.05));
  r.p_value = 0.05;
  CHECK(!is_stationary(r, 0.05));
  CHECK_THROWS_AS(is_stationary(r, 0.0), InvalidSpec);
  CHECK_THROWS_AS(is_stationary(r, 1.0), InvalidSpec);
}
