#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "tsfit/errors.hpp"
#include "tsfit/garma.hpp"
#include "tsfit/numeric.hpp"
#include "tsfit/optimize.hpp"

using namespace tsfit;

TEST_CASE("mean_recursion: vanishing and zero-coefficient cases") {
  garma::Spec plain{0, 0, 0.1};
  garma::Params intercept{{1.3}, {}, {}};
  CHECK(garma::mean_recursion(plain, intercept, {}, {}) ==
        doctest::Approx(std::exp(1.3)).epsilon(1e-14));

  std::vector<double> y = {4, 7};
  std::vector<double> mu = {4, 7};
  garma::Params zero_ar{{1.3}, {0.0}, {}};
  CHECK(garma::mean_recursion({1, 0, 0.1}, zero_ar, y, mu) ==
        doctest::Approx(std::exp(1.3)).epsilon(1e-14));
}

TEST_CASE("mean_recursion: hand-evaluated single step") {
  garma::Spec spec{1, 0, 0.1};
  garma::Params par{{1.0}, {0.5}, {}};
  std::vector<double> y = {2, 3};
  std::vector<double> mu = {2, 3};
  const double got = garma::mean_recursion(spec, par, y, mu);
  CHECK(got == doctest::Approx(std::exp(1.0 + 0.5 * (std::log(3.0) - 1.0))).epsilon(1e-12));
}

TEST_CASE("mean_recursion: clamping of zero counts and overflow guard") {
  garma::Spec spec{1, 0, 0.1};
  garma::Params par{{0.0}, {1.0}, {}};
  std::vector<double> y = {5, 0};  // last value clamps to 0.1
  std::vector<double> mu = {5, 1};
  CHECK(garma::mean_recursion(spec, par, y, mu) ==
        doctest::Approx(std::exp(std::log(0.1))).epsilon(1e-12));

  garma::Params huge{{800.0}, {}, {}};
  CHECK_THROWS_AS(garma::mean_recursion({0, 0, 0.1}, huge, {}, {}), OverflowGuard);
  CHECK_THROWS_AS(garma::mean_recursion(spec, par, {}, {}), SeriesTooShort);
}

TEST_CASE("loglik: intercept-only closed form") {
  TimeSeries y = make_series({1, 2, 3});
  garma::Params par{{std::log(2.0)}, {}, {}};
  const double ll = garma::loglik(y, {0, 0, 0.1}, par);
  double expect = 0.0;
  for (double v : y.values) {
    expect += v * std::log(2.0) - 2.0 - num::log_factorial(v);
  }
  CHECK(ll == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("loglik: compositional oracle via the public recursion") {
  TimeSeries y = garma::simulate({1, 1, 0.1}, {{1.2}, {0.4}, {-0.2}}, 200, 7);
  garma::Spec spec{1, 1, 0.1};
  garma::Params par{{1.1}, {0.3}, {0.15}};
  const double ll = garma::loglik(y, spec, par);

  // rebuild mu_t step by step with the public recursion and the pre-sample
  // pinning convention
  const std::size_t m = 1;
  std::vector<double> mu(y.size());
  for (std::size_t t = 0; t < m; ++t) mu[t] = std::max(y.values[t], spec.clamp_c);
  double manual = 0.0;
  for (std::size_t t = m; t < y.size(); ++t) {
    mu[t] = garma::mean_recursion(spec, par,
                                  std::span<const double>(y.values.data(), t),
                                  std::span<const double>(mu.data(), t));
    manual += y.values[t] * std::log(mu[t]) - mu[t] - num::log_factorial(y.values[t]);
  }
  CHECK(ll == doctest::Approx(manual).epsilon(1e-12));
}

TEST_CASE("loglik: zero counts stay finite, non-counts rejected") {
  TimeSeries y = make_series({0, 3, 0, 2, 5, 0});
  const double ll = garma::loglik(y, {1, 1, 0.1}, {{0.5}, {0.3}, {0.1}});
  CHECK(std::isfinite(ll));

  CHECK_THROWS_AS(garma::loglik(make_series({1, -2, 3}), {0, 0, 0.1}, {{1.0}, {}, {}}),
                  NonCountData);
  CHECK_THROWS_AS(garma::loglik(make_series({1, 2.5, 3}), {0, 0, 0.1}, {{1.0}, {}, {}}),
                  NonCountData);
}

TEST_CASE("fit: intercept-only equals the closed-form Poisson MLE") {
  TimeSeries y = garma::simulate({0, 0, 0.1}, {{std::log(6.0)}, {}, {}}, 500, 11);
  garma::Fit f = garma::fit(y, {0, 0, 0.1});
  double mean = 0.0;
  for (double v : y.values) mean += v;
  mean /= static_cast<double>(y.size());
  CHECK(f.converged);
  CHECK(f.beta[0] == doctest::Approx(std::log(mean)).epsilon(1e-6));
  CHECK(f.beta_se[0] > 0.0);
  // Poisson information: se(beta0) = 1/sqrt(n*ybar)
  CHECK(f.beta_se[0] ==
        doctest::Approx(1.0 / std::sqrt(static_cast<double>(y.size()) * mean)).epsilon(0.05));
}

TEST_CASE("fit: loglik never below the initialization point") {
  TimeSeries y = garma::simulate({1, 0, 0.1}, {{2.0}, {0.4}, {}}, 800, 13);
  garma::Fit f = garma::fit(y, {1, 0, 0.1});
  double clamped_mean = 0.0;
  for (double v : y.values) clamped_mean += std::max(v, 0.1);
  clamped_mean /= static_cast<double>(y.size());
  garma::Params init{{std::log(clamped_mean)}, {0.0}, {}};
  CHECK(f.loglik >= garma::loglik(y, {1, 0, 0.1}, init) - 1e-9);
}

TEST_CASE("fit: GARMA(1,0) simulate-recover, single seed") {
  TimeSeries y = garma::simulate({1, 0, 0.1}, {{2.0}, {0.4}, {}}, 3000, 17);
  garma::Fit f = garma::fit(y, {1, 0, 0.1});
  CHECK(f.converged);
  CHECK(std::abs(f.beta[0] - 2.0) < 0.15);
  CHECK(std::abs(f.phi[0] - 0.4) < 0.1);
  CHECK(f.phi_se[0] > 0.0);
  REQUIRE(f.mu.size() == y.size());
  for (double m : f.mu) CHECK(m > 0.0);
}

TEST_CASE("fit: input validation") {
  CHECK_THROWS_AS(garma::fit(make_series({1, 2, 3}), {1, 0, 0.1}), TooFewObservations);
  CHECK_THROWS_AS(garma::fit(make_series({1.5, 2, 3}), {0, 0, 0.1}), NonCountData);
  TimeSeries ok = make_series(std::vector<double>(40, 3.0));
  CHECK_THROWS_AS(garma::fit(ok, {1, 0, 1.5}), InvalidSpec);
}

TEST_CASE("finite-difference gradient of the loglik matches a central-difference oracle") {
  TimeSeries y = garma::simulate({1, 1, 0.1}, {{1.5}, {0.3}, {0.2}}, 400, 19);
  garma::Spec spec{1, 1, 0.1};
  opt::Objective obj = [&](const Eigen::VectorXd& v) {
    garma::Params par{{v(0)}, {v(1)}, {v(2)}};
    return garma::loglik(y, spec, par);
  };
  Eigen::VectorXd at(3);
  at << 1.4, 0.25, 0.15;
  Eigen::VectorXd lib = opt::fd_gradient(obj, at, 1e-6);
  for (int i = 0; i < 3; ++i) {
    const double h = 1e-5 * std::max(1.0, std::abs(at(i)));
    Eigen::VectorXd hi = at, lo = at;
    hi(i) += h;
    lo(i) -= h;
    const double oracle = (obj(hi) - obj(lo)) / (2.0 * h);
    CHECK(lib(i) == doctest::Approx(oracle).epsilon(1e-4));
  }
}

TEST_CASE("simulate: intercept-only mean, determinism, explosive guard") {
  TimeSeries y = garma::simulate({0, 0, 0.1}, {{std::log(5.0)}, {}, {}}, 10000, 23);
  double mean = 0.0;
  for (double v : y.values) mean += v;
  mean /= static_cast<double>(y.size());
  CHECK(mean == doctest::Approx(5.0).epsilon(0.04));  // +- 0.2

  TimeSeries a = garma::simulate({1, 1, 0.1}, {{1.0}, {0.3}, {0.2}}, 300, 29);
  TimeSeries b = garma::simulate({1, 1, 0.1}, {{1.0}, {0.3}, {0.2}}, 300, 29);
  CHECK(a.values == b.values);  // bitwise identical

  // huge intercept diverges immediately; large phi amplifies until the guard
  CHECK_THROWS_AS(garma::simulate({0, 0, 0.1}, {{20.0}, {}, {}}, 10, 1), OverflowGuard);
  CHECK_THROWS_AS(garma::simulate({1, 0, 0.1}, {{6.0}, {40.0}, {}}, 2000, 3), OverflowGuard);
}
