#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "tsfit/errors.hpp"
#include "tsfit/numeric.hpp"
#include "tsfit/optimize.hpp"

using namespace tsfit;

TEST_CASE("normal cdf/quantile round trip, reference points") {
  CHECK(num::normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(num::normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  CHECK(num::normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-10));
  CHECK(num::normal_quantile(0.5) == doctest::Approx(0.0));
  for (double p = 0.001; p < 1.0; p += 0.013) {
    CHECK(num::normal_cdf(num::normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK_THROWS_AS(num::normal_quantile(0.0), NumericalDegeneracy);
  CHECK_THROWS_AS(num::normal_quantile(1.0), NumericalDegeneracy);
}

TEST_CASE("chi-square cdf: closed forms at even df") {
  // df = 2: 1 - exp(-x/2); df = 4: 1 - exp(-x/2)(1 + x/2)
  for (double x = 0.1; x < 25.0; x += 0.7) {
    CHECK(num::chi_square_cdf(x, 2) == doctest::Approx(1.0 - std::exp(-x / 2)).epsilon(1e-12));
    CHECK(num::chi_square_cdf(x, 4) ==
          doctest::Approx(1.0 - std::exp(-x / 2) * (1.0 + x / 2)).epsilon(1e-12));
  }
  // standard quantiles
  CHECK(num::chi_square_cdf(18.307038053275146, 10) == doctest::Approx(0.95).epsilon(1e-9));
  CHECK(num::chi_square_cdf(3.841458820694124, 1) == doctest::Approx(0.95).epsilon(1e-9));
  CHECK(num::chi_square_cdf(0.0, 5) == 0.0);
}

TEST_CASE("log_factorial") {
  CHECK(num::log_factorial(0) == doctest::Approx(0.0));
  CHECK(num::log_factorial(5) == doctest::Approx(std::log(120.0)).epsilon(1e-14));
  CHECK(num::log_factorial(20) == doctest::Approx(42.335616460753485).epsilon(1e-12));
  CHECK_THROWS_AS(num::log_factorial(-1), NonCountData);
}

TEST_CASE("rng: determinism and moments") {
  num::Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
  for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
  for (int i = 0; i < 100; ++i) CHECK(a.poisson(7.3) == b.poisson(7.3));

  num::Rng r(2024);
  double s = 0, s2 = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    double v = r.normal();
    s += v;
    s2 += v * v;
  }
  CHECK(std::abs(s / n) < 0.02);
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.05));

  double ps = 0, ps2 = 0;
  for (int i = 0; i < n; ++i) {
    double v = static_cast<double>(r.poisson(100.0));  // chunked path
    ps += v;
    ps2 += v * v;
  }
  const double pm = ps / n;
  CHECK(pm == doctest::Approx(100.0).epsilon(0.01));
  CHECK(ps2 / n - pm * pm == doctest::Approx(100.0).epsilon(0.1));

  for (int i = 0; i < 1000; ++i) {
    double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK_THROWS_AS(r.poisson(1e7), OverflowGuard);
  CHECK_THROWS_AS(r.poisson(std::nan("")), OverflowGuard);
}

TEST_CASE("optimizer: exact quadratic") {
  Eigen::MatrixXd a(2, 2);
  a << 4.0, 1.0, 1.0, 3.0;
  Eigen::VectorXd target(2);
  target << 1.5, -2.0;
  opt::Objective f = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd d = x - target;
    return d.dot(a * d) + 7.0;
  };
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2);

  opt::Result nm = opt::nelder_mead(f, x0);
  CHECK(nm.converged);
  CHECK(nm.x(0) == doctest::Approx(1.5).epsilon(1e-4));
  CHECK(nm.x(1) == doctest::Approx(-2.0).epsilon(1e-4));

  opt::Result bf = opt::bfgs(f, x0);
  CHECK(bf.converged);
  CHECK(bf.fmin == doctest::Approx(7.0).epsilon(1e-9));

  // Hessian of the quadratic is 2A everywhere
  Eigen::MatrixXd h = opt::fd_hessian(f, x0, 1e-4);
  CHECK(h(0, 0) == doctest::Approx(8.0).epsilon(1e-5));
  CHECK(h(0, 1) == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(h(1, 1) == doctest::Approx(6.0).epsilon(1e-5));

  Eigen::VectorXd g = opt::fd_gradient(f, x0);
  Eigen::VectorXd g_true = 2.0 * a * (x0 - target);
  CHECK(g(0) == doctest::Approx(g_true(0)).epsilon(1e-7));
  CHECK(g(1) == doctest::Approx(g_true(1)).epsilon(1e-7));
}

TEST_CASE("optimizer: rosenbrock valley") {
  opt::Objective f = [](const Eigen::VectorXd& x) {
    const double a = 1.0 - x(0);
    const double b = x(1) - x(0) * x(0);
    return a * a + 100.0 * b * b;
  };
  Eigen::VectorXd x0(2);
  x0 << -1.2, 1.0;
  opt::Options opts;
  opts.max_iterations = 2000;
  opt::Result r = opt::minimize(f, x0, opts);
  CHECK(r.x(0) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.x(1) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("optimizer: penalty walls do not break the search") {
  opt::Objective f = [](const Eigen::VectorXd& x) {
    if (std::abs(x(0)) > 2.0) return 1e10;
    return (x(0) - 1.0) * (x(0) - 1.0);
  };
  Eigen::VectorXd x0(1);
  x0 << -1.9;
  opt::Result r = opt::minimize(f, x0);
  CHECK(r.x(0) == doctest::Approx(1.0).epsilon(1e-6));
}
