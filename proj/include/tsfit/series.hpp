#ifndef TSFIT_SERIES_HPP
#define TSFIT_SERIES_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tsfit {

// Calendar date; only construction, ordering and ISO formatting are needed.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;

  static std::optional<Date> parse(std::string_view iso);  // strict YYYY-MM-DD
  std::string to_string() const;
};

// Ordered real-valued observations with an optional date index and an exact
// record of applied first-differences (so the original scale can always be
// recovered).
struct TimeSeries {
  std::vector<double> values;
  std::vector<Date> dates;         // empty, or one per value
  int d_applied = 0;
  std::vector<double> origin_head;  // values removed by differencing, pass by pass
  std::vector<Date> origin_dates;   // their dates, when the series is dated

  std::size_t size() const { return values.size(); }
  bool has_dates() const { return !dates.empty(); }
};

struct SummaryStats {
  double min = 0, q1 = 0, median = 0, mean = 0, q3 = 0, max = 0, sd = 0, var = 0;
};

struct SplitSpec {
  double train_fraction = 0.9;
  std::size_t train_len = 0;
  std::size_t test_len = 0;
};

// Validating constructor: finite values, at least one observation, dates (when
// given) strictly increasing and matching the value count.
TimeSeries make_series(std::vector<double> values, std::vector<Date> dates = {});

// d passes of first differencing; each pass records the removed head value
// (and date) so the operation inverts exactly.
TimeSeries difference(const TimeSeries& s, int d);

// Undo one differencing pass. Throws NothingToInvert when d_applied == 0.
TimeSeries undifference(const TimeSeries& s);

// Descriptive statistics: quartiles by linear interpolation at position
// (n-1)*p on the order statistics, sd/var with the n-1 denominator.
SummaryStats summarize(const TimeSeries& s);

// floor(train_fraction * n) split sizes; DegenerateSplit unless train >= 2 and
// test >= 1.
SplitSpec split_spec(const TimeSeries& s, double train_fraction);

// Chronological prefix/suffix split. The halves are fresh series: the
// differencing record does not survive fragmentation.
std::pair<TimeSeries, TimeSeries> split(const TimeSeries& s, double train_fraction);

}  // namespace tsfit

#endif  // TSFIT_SERIES_HPP
