#include "tsfit/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "tsfit/errors.hpp"

namespace tsfit {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static const int dm[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return dm[m - 1];
}

bool parse_int(std::string_view s, int& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

}  // namespace

std::optional<Date> Date::parse(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  Date d;
  if (!parse_int(iso.substr(0, 4), d.year) || !parse_int(iso.substr(5, 2), d.month) ||
      !parse_int(iso.substr(8, 2), d.day)) {
    return std::nullopt;
  }
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month)) {
    return std::nullopt;
  }
  return d;
}

std::string Date::to_string() const {
  char buf[11];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

TimeSeries make_series(std::vector<double> values, std::vector<Date> dates) {
  if (values.empty()) throw InvalidSeries("series must hold at least one observation");
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidSeries("series values must be finite");
  }
  if (!dates.empty()) {
    if (dates.size() != values.size()) {
      throw InvalidSeries("date index length does not match value count");
    }
    for (std::size_t i = 1; i < dates.size(); ++i) {
      if (!(dates[i - 1] < dates[i])) {
        throw InvalidSeries("date index must be strictly increasing");
      }
    }
  }
  TimeSeries s;
  s.values = std::move(values);
  s.dates = std::move(dates);
  return s;
}

TimeSeries difference(const TimeSeries& s, int d) {
  if (d < 0) throw InvalidSeries("difference order must be non-negative");
  if (s.size() <= static_cast<std::size_t>(d)) {
    throw SeriesTooShort("cannot take " + std::to_string(d) + " differences of " +
                         std::to_string(s.size()) + " observations");
  }
  TimeSeries out = s;
  for (int pass = 0; pass < d; ++pass) {
    out.origin_head.push_back(out.values.front());
    if (out.has_dates()) {
      out.origin_dates.push_back(out.dates.front());
      out.dates.erase(out.dates.begin());
    }
    std::vector<double> next(out.values.size() - 1);
    for (std::size_t i = 0; i + 1 < out.values.size(); ++i) {
      next[i] = out.values[i + 1] - out.values[i];
    }
    out.values = std::move(next);
    ++out.d_applied;
  }
  return out;
}

TimeSeries undifference(const TimeSeries& s) {
  if (s.d_applied < 1 || s.origin_head.empty()) {
    throw NothingToInvert("series carries no differencing record");
  }
  TimeSeries out = s;
  double head = out.origin_head.back();
  out.origin_head.pop_back();
  std::vector<double> restored(out.values.size() + 1);
  restored[0] = head;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    restored[i + 1] = restored[i] + out.values[i];
  }
  out.values = std::move(restored);
  if (!out.origin_dates.empty()) {
    out.dates.insert(out.dates.begin(), out.origin_dates.back());
    out.origin_dates.pop_back();
  }
  --out.d_applied;
  return out;
}

namespace {

double quantile_type7(const std::vector<double>& sorted, double p) {
  const double pos = (static_cast<double>(sorted.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

SummaryStats summarize(const TimeSeries& s) {
  const std::size_t n = s.size();
  if (n < 2) throw SeriesTooShort("summarize needs at least two observations");

  std::vector<double> sorted = s.values;
  std::sort(sorted.begin(), sorted.end());

  SummaryStats st;
  st.min = sorted.front();
  st.max = sorted.back();
  st.q1 = quantile_type7(sorted, 0.25);
  st.median = quantile_type7(sorted, 0.5);
  st.q3 = quantile_type7(sorted, 0.75);
  st.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : sorted) ss += (v - st.mean) * (v - st.mean);
  st.var = ss / static_cast<double>(n - 1);
  st.sd = std::sqrt(st.var);
  return st;
}

SplitSpec split_spec(const TimeSeries& s, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw DegenerateSplit("train fraction must lie in (0, 1)");
  }
  const std::size_t n = s.size();
  const auto train_len =
      static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n)));
  if (train_len < 2 || train_len >= n) {
    throw DegenerateSplit("split of " + std::to_string(n) + " observations at fraction " +
                          std::to_string(train_fraction) + " leaves no usable train/test parts");
  }
  return SplitSpec{train_fraction, train_len, n - train_len};
}

std::pair<TimeSeries, TimeSeries> split(const TimeSeries& s, double train_fraction) {
  const SplitSpec spec = split_spec(s, train_fraction);
  TimeSeries train, test;
  train.values.assign(s.values.begin(), s.values.begin() + static_cast<long>(spec.train_len));
  test.values.assign(s.values.begin() + static_cast<long>(spec.train_len), s.values.end());
  if (s.has_dates()) {
    train.dates.assign(s.dates.begin(), s.dates.begin() + static_cast<long>(spec.train_len));
    test.dates.assign(s.dates.begin() + static_cast<long>(spec.train_len), s.dates.end());
  }
  return {std::move(train), std::move(test)};
}

}  // namespace tsfit
