#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "tsfit/errors.hpp"
#include "tsfit/series.hpp"

using namespace tsfit;

TEST_CASE("difference: first differences of a known sequence") {
  TimeSeries s = make_series({1, 3, 6, 10});
  TimeSeries d = difference(s, 1);
  CHECK(d.values == std::vector<double>{2, 3, 4});
  CHECK(d.d_applied == 1);
  CHECK(d.origin_head == std::vector<double>{1});
}

TEST_CASE("difference: constant series maps to zero") {
  TimeSeries d = difference(make_series({7.5, 7.5, 7.5, 7.5}), 1);
  CHECK(d.values == std::vector<double>{0, 0, 0});
}

TEST_CASE("difference: length arithmetic and d=0") {
  std::vector<double> v(425);
  std::iota(v.begin(), v.end(), 0.0);
  CHECK(difference(make_series(v), 1).size() == 424);
  CHECK(difference(make_series(v), 0).values == v);
  CHECK(difference(make_series(v), 2).size() == 423);
}

TEST_CASE("difference: series too short") {
  CHECK_THROWS_AS(difference(make_series({1, 2}), 2), SeriesTooShort);
  CHECK_THROWS_AS(difference(make_series({1}), 1), SeriesTooShort);
}

TEST_CASE("undifference: inverts one pass exactly") {
  TimeSeries s = make_series({1, 3, 6, 10});
  TimeSeries back = undifference(difference(s, 1));
  CHECK(back.values == s.values);
  CHECK(back.d_applied == 0);

  // [0,0,0] with head 5
  TimeSeries flat = difference(make_series({5, 5, 5, 5}), 1);
  CHECK(flat.values == std::vector<double>{0, 0, 0});
  CHECK(undifference(flat).values == std::vector<double>{5, 5, 5, 5});
}

TEST_CASE("undifference: nothing to invert") {
  CHECK_THROWS_AS(undifference(make_series({1, 2, 3})), NothingToInvert);
}

TEST_CASE("undifference: random round trip is exact, dates restored") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  std::vector<double> v(50);
  std::vector<Date> dates(50);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = u(rng);
    dates[i].year = 2021;
    dates[i].month = 1 + static_cast<int>(i / 28);
    dates[i].day = static_cast<int>(i % 28) + 1;
  }
  TimeSeries s = make_series(v, dates);
  TimeSeries d2 = difference(s, 2);
  TimeSeries back = undifference(undifference(d2));
  CHECK(back.values == v);  // exact equality required
  CHECK(back.dates == dates);
  CHECK(back.d_applied == 0);
}

TEST_CASE("summarize: constant and small series") {
  SummaryStats st = summarize(make_series({5, 5, 5}));
  CHECK(st.mean == 5);
  CHECK(st.sd == 0);
  CHECK(st.min == 5);
  CHECK(st.max == 5);

  SummaryStats q = summarize(make_series({1, 2, 3, 4, 5}));
  CHECK(q.median == 3);
  CHECK(q.q1 == 2);
  CHECK(q.q3 == 4);
  CHECK(q.var == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(q.sd == doctest::Approx(std::sqrt(2.5)).epsilon(1e-12));
}

TEST_CASE("summarize: quartile interpolation at non-integer positions") {
  // position (n-1)p on the order statistics
  SummaryStats st = summarize(make_series({1, 2, 3, 4}));
  CHECK(st.q1 == doctest::Approx(1.75).epsilon(1e-12));
  CHECK(st.median == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(st.q3 == doctest::Approx(3.25).epsilon(1e-12));
}

TEST_CASE("summarize: order free and var = sd^2") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<double> v(101);
  for (double& x : v) x = u(rng);
  SummaryStats a = summarize(make_series(v));
  std::shuffle(v.begin(), v.end(), rng);
  SummaryStats b = summarize(make_series(v));
  CHECK(a.min == b.min);
  CHECK(a.q1 == b.q1);
  CHECK(a.median == b.median);
  CHECK(a.mean == doctest::Approx(b.mean).epsilon(1e-12));
  CHECK(a.q3 == b.q3);
  CHECK(a.max == b.max);
  CHECK(a.var == doctest::Approx(a.sd * a.sd).epsilon(1e-12));
}

TEST_CASE("summarize: too short") {
  CHECK_THROWS_AS(summarize(make_series({1.0})), SeriesTooShort);
}

TEST_CASE("split: sizes and boundaries") {
  std::vector<double> ten(10), paper(425), three(3);
  std::iota(ten.begin(), ten.end(), 0.0);
  std::iota(paper.begin(), paper.end(), 0.0);
  std::iota(three.begin(), three.end(), 0.0);

  auto [tr10, te10] = split(make_series(ten), 0.9);
  CHECK(tr10.size() == 9);
  CHECK(te10.size() == 1);

  auto [tr425, te425] = split(make_series(paper), 0.9);
  CHECK(tr425.size() == 382);
  CHECK(te425.size() == 43);

  auto [tr3, te3] = split(make_series(three), 0.9);  // floor(2.7) = 2 is allowed
  CHECK(tr3.size() == 2);
  CHECK(te3.size() == 1);

  CHECK_THROWS_AS(split(make_series(three), 0.5), DegenerateSplit);  // train would be 1
  CHECK_THROWS_AS(split(make_series(ten), 0.0), DegenerateSplit);
  CHECK_THROWS_AS(split(make_series(ten), 1.0), DegenerateSplit);
}

TEST_CASE("split: concatenation preserves the series") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(37);
  for (double& x : v) x = u(rng);
  TimeSeries s = make_series(v);
  auto [train, test] = split(s, 0.7);
  std::vector<double> glued = train.values;
  glued.insert(glued.end(), test.values.begin(), test.values.end());
  CHECK(glued == v);
}

TEST_CASE("difference is linear") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> x(30), y(30), mix(30);
    const double a = u(rng), b = u(rng);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = u(rng);
      y[i] = u(rng);
      mix[i] = a * x[i] + b * y[i];
    }
    TimeSeries dm = difference(make_series(mix), 1);
    TimeSeries dx = difference(make_series(x), 1);
    TimeSeries dy = difference(make_series(y), 1);
    for (std::size_t i = 0; i < dm.size(); ++i) {
      CHECK(dm.values[i] ==
            doctest::Approx(a * dx.values[i] + b * dy.values[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("make_series: validation") {
  CHECK_THROWS_AS(make_series({}), InvalidSeries);
  CHECK_THROWS_AS(make_series({1.0, std::nan("")}), InvalidSeries);
  CHECK_THROWS_AS(make_series({1.0, std::numeric_limits<double>::infinity()}), InvalidSeries);
  CHECK_THROWS_AS(make_series({1, 2}, {Date{2020, 1, 1}}), InvalidSeries);
  CHECK_THROWS_AS(make_series({1, 2}, {Date{2020, 1, 2}, Date{2020, 1, 2}}), InvalidSeries);
  CHECK_THROWS_AS(make_series({1, 2}, {Date{2020, 1, 2}, Date{2020, 1, 1}}), InvalidSeries);
}

TEST_CASE("Date::parse") {
  CHECK(Date::parse("2020-03-02") == Date{2020, 3, 2});
  CHECK(Date::parse("2020-02-29") == Date{2020, 2, 29});  // leap year
  CHECK(!Date::parse("2021-02-29"));
  CHECK(!Date::parse("2020-13-01"));
  CHECK(!Date::parse("2020-00-10"));
  CHECK(!Date::parse("2020-3-2"));
  CHECK(!Date::parse("20200302"));
  CHECK(!Date::parse("2020-03-02x"));
  CHECK(Date{2020, 3, 2}.to_string() == "2020-03-02");
}
