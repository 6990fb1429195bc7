#include "tsfit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "tsfit/correlogram.hpp"
#include "tsfit/errors.hpp"
#include "tsfit/numeric.hpp"

namespace tsfit {

LjungBoxResult ljung_box(const TimeSeries& residuals, int lags, int fitted_params) {
  if (lags < 1 || fitted_params < 0 || lags <= fitted_params) {
    throw DegenerateDf("ljung_box needs lags > fitted_params >= 0");
  }
  const std::size_t n = residuals.size();
  if (n <= static_cast<std::size_t>(lags) + 1) {
    throw SeriesTooShort("ljung_box needs more observations than lags + 1");
  }

  Correlogram c = acf(residuals, static_cast<std::size_t>(lags));
  const double nd = static_cast<double>(n);
  double q = 0.0;
  for (int k = 1; k <= lags; ++k) {
    const double rho = c.at_lag(static_cast<std::size_t>(k));
    q += rho * rho / (nd - static_cast<double>(k));
  }
  q *= nd * (nd + 2.0);

  LjungBoxResult res;
  res.q_stat = q;
  res.lags_used = lags;
  res.fitted_params_adjustment = fitted_params;
  res.df = lags - fitted_params;
  res.p_value = 1.0 - num::chi_square_cdf(q, static_cast<double>(res.df));
  res.p_value = std::clamp(res.p_value, 0.0, 1.0);
  return res;
}

double aic(double loglik, int k) {
  if (k < 0) throw InvalidSpec("aic parameter count must be non-negative");
  return 2.0 * static_cast<double>(k) - 2.0 * loglik;
}

namespace {

void check_pair(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.empty() || actual.empty()) throw EmptyInput("error metrics need observations");
  if (predicted.size() != actual.size()) {
    throw LengthMismatch("predicted and actual lengths differ");
  }
}

}  // namespace

double mae(std::span<const double> predicted, std::span<const double> actual) {
  check_pair(predicted, actual);
  double acc = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) acc += std::abs(predicted[i] - actual[i]);
  return acc / static_cast<double>(predicted.size());
}

double rmse(std::span<const double> predicted, std::span<const double> actual) {
  check_pair(predicted, actual);
  double acc = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double e = predicted[i] - actual[i];
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(predicted.size()));
}

std::vector<EvalReport> rank_models(std::vector<EvalReport> reports) {
  if (reports.empty()) throw EmptyInput("rank_models needs at least one report");
  std::stable_sort(reports.begin(), reports.end(), [](const EvalReport& a, const EvalReport& b) {
    return std::tie(a.aic, a.rmse, a.mae, a.model_label) <
           std::tie(b.aic, b.rmse, b.mae, b.model_label);
  });
  return reports;
}

}  // namespace tsfit
