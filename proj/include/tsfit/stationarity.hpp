#ifndef TSFIT_STATIONARITY_HPP
#define TSFIT_STATIONARITY_HPP

#include <optional>
#include <string>

#include "tsfit/series.hpp"

namespace tsfit {

// Augmented Dickey-Fuller result (constant + linear trend regression).
struct AdfResult {
  enum class Clamp { none, low, high };
  double statistic = 0.0;   // tau = gamma_hat / se(gamma_hat)
  int lag_order = 0;        // number of lagged differences in the regression
  double p_value = 0.5;     // clamped to [0.01, 0.99]
  Clamp clamped = Clamp::none;
  std::string regression = "constant+trend";
};

// Fits dx_t = a + b*t + g*x_{t-1} + sum_i d_i dx_{t-i} + e_t by OLS and
// interpolates the tau statistic in the Dickey-Fuller trend quantile table
// (sizes 25..inf x probabilities 0.01..0.99, bilinear, clamped ends).
// Default lag order: floor((n-1)^(1/3)).
AdfResult adf_test(const TimeSeries& s, std::optional<int> lag_order = std::nullopt);

// True iff p_value < alpha (strictly).
bool is_stationary(const AdfResult& r, double alpha);

}  // namespace tsfit

#endif  // TSFIT_STATIONARITY_HPP
