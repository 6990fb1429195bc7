#include <doctest.h>

#include <cmath>
#include <random>

#include "tsfit/correlogram.hpp"
#include "tsfit/diagnostics.hpp"
#include "tsfit/errors.hpp"
#include "tsfit/numeric.hpp"

using namespace tsfit;

TEST_CASE("ljung_box: zero autocorrelation gives Q=0, p=1") {
  // [1, 0, -1] has mean 0 and exactly zero lag-1 autocovariance
  LjungBoxResult r = ljung_box(make_series({1, 0, -1, 1, 0, -1, 1, 0, -1}), 1, 0);
  // the repeating pattern has rho_1 = -0.5; use the minimal exact-zero case
  LjungBoxResult z = ljung_box(make_series({1, 0, -1}), 1, 0);
  CHECK(z.q_stat == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(z.p_value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.q_stat > 0.0);
}

TEST_CASE("ljung_box: direct formula agreement") {
  num::Rng rng(55);
  std::vector<double> e(400);
  for (double& v : e) v = rng.normal();
  TimeSeries s = make_series(e);
  LjungBoxResult r = ljung_box(s, 12, 3);
  CHECK(r.df == 9);
  CHECK(r.lags_used == 12);
  CHECK(r.fitted_params_adjustment == 3);

  Correlogram c = acf(s, 12);
  const double n = 400.0;
  double q = 0.0;
  for (int k = 1; k <= 12; ++k) {
    q += c.at_lag(static_cast<std::size_t>(k)) * c.at_lag(static_cast<std::size_t>(k)) /
         (n - static_cast<double>(k));
  }
  q *= n * (n + 2.0);
  CHECK(r.q_stat == doctest::Approx(q).epsilon(1e-12));
  CHECK(r.p_value == doctest::Approx(1.0 - num::chi_square_cdf(q, 9)).epsilon(1e-12));
}

TEST_CASE("ljung_box: scale invariance of Q") {
  num::Rng rng(56);
  std::vector<double> e(300), scaled(300);
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = rng.normal();
    scaled[i] = 250.0 * e[i];
  }
  LjungBoxResult a = ljung_box(make_series(e), 10, 2);
  LjungBoxResult b = ljung_box(make_series(scaled), 10, 2);
  CHECK(a.q_stat == doctest::Approx(b.q_stat).epsilon(1e-10));
  CHECK(a.p_value == doctest::Approx(b.p_value).epsilon(1e-10));
}

TEST_CASE("ljung_box: rough calibration on white noise") {
  int below = 0;
  const int runs = 60;
  for (int seed = 0; seed < runs; ++seed) {
    num::Rng rng(900 + static_cast<std::uint64_t>(seed));
    std::vector<double> e(500);
    for (double& v : e) v = rng.normal();
    if (ljung_box(make_series(e), 10, 0).p_value < 0.1) ++below;
  }
  CHECK(below >= 1);
  CHECK(below <= 15);
}

TEST_CASE("ljung_box: errors") {
  std::vector<double> ok(50);
  for (std::size_t i = 0; i < ok.size(); ++i) ok[i] = static_cast<double>(i % 7);
  CHECK_THROWS_AS(ljung_box(make_series(ok), 5, 5), DegenerateDf);
  CHECK_THROWS_AS(ljung_box(make_series(ok), 5, 6), DegenerateDf);
  CHECK_THROWS_AS(ljung_box(make_series({1, 2, 1, 2}), 3, 0), SeriesTooShort);
}

TEST_CASE("aic: arithmetic and monotonicity") {
  CHECK(aic(0.0, 0) == 0.0);
  CHECK(aic(-10.0, 2) == 24.0);
  CHECK(aic(-3120.0, 4) == doctest::Approx(6248.0));
  CHECK(aic(-5.0, 3) > aic(-4.0, 3));   // decreasing in loglik
  CHECK(aic(-5.0, 4) > aic(-5.0, 3));   // increasing in k
  CHECK_THROWS_AS(aic(1.0, -1), InvalidSpec);
}

TEST_CASE("mae and rmse: worked examples") {
  std::vector<double> actual = {0, 0, 0};
  std::vector<double> predicted = {1, -1, 2};
  CHECK(mae(predicted, actual) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));

  std::vector<double> same = {3.5, -1.25, 9.75};
  CHECK(mae(same, same) == 0.0);
  CHECK(rmse(same, same) == 0.0);

  std::vector<double> two_a = {0, 0};
  std::vector<double> two_p = {1, -1};
  CHECK(rmse(two_p, two_a) == doctest::Approx(1.0).epsilon(1e-15));
  std::vector<double> p34 = {3, 4};
  CHECK(rmse(p34, two_a) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-15));

  CHECK_THROWS_AS(mae(two_a, actual), LengthMismatch);
  CHECK_THROWS_AS(rmse(std::vector<double>{}, std::vector<double>{}), EmptyInput);
}

TEST_CASE("mae/rmse: symmetry, shift invariance, power-mean inequality") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng() % 20;
    std::vector<double> a(n), p(n), a_shift(n), p_shift(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = u(rng);
      p[i] = u(rng);
      a_shift[i] = a[i] + 3.25;
      p_shift[i] = p[i] + 3.25;
    }
    CHECK(mae(p, a) == mae(a, p));
    CHECK(rmse(p, a) == rmse(a, p));
    CHECK(mae(p_shift, a_shift) == doctest::Approx(mae(p, a)).epsilon(1e-10));
    CHECK(rmse(p, a) >= mae(p, a) - 1e-12);
  }
  // equality iff all |e_i| equal
  std::vector<double> z = {0, 0, 0};
  std::vector<double> e = {2, -2, 2};
  CHECK(rmse(e, z) == doctest::Approx(mae(e, z)).epsilon(1e-15));
}

TEST_CASE("rank_models: AIC order with deterministic tie-breaks") {
  EvalReport a{497.2133, 850.654, 6249.0, {}, "ARMA(1,1)"};
  EvalReport b{820.0247, 1193.662, 6512.66, {}, "MA(5)"};
  auto ranked = rank_models({b, a});
  CHECK(ranked.front().model_label == "ARMA(1,1)");
  CHECK(ranked.back().model_label == "MA(5)");

  EvalReport t1{1.0, 1.0, 100.0, {}, "m1"};
  EvalReport t2{1.0, 2.0, 100.0, {}, "m2"};
  auto tie = rank_models({t2, t1});
  CHECK(tie.front().model_label == "m1");  // lower rmse wins the tie

  EvalReport u1{2.0, 1.0, 100.0, {}, "a"};
  EvalReport u2{1.0, 1.0, 100.0, {}, "b"};
  auto tie2 = rank_models({u1, u2});
  CHECK(tie2.front().model_label == "b");  // then lower mae

  auto single = rank_models({a});
  CHECK(single.size() == 1);
  CHECK(single.front().model_label == "ARMA(1,1)");

  CHECK_THROWS_AS(rank_models({}), EmptyInput);
}
