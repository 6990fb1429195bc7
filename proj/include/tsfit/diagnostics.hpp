#ifndef TSFIT_DIAGNOSTICS_HPP
#define TSFIT_DIAGNOSTICS_HPP

#include <span>
#include <string>
#include <vector>

#include "tsfit/series.hpp"

namespace tsfit {

struct LjungBoxResult {
  double q_stat = 0.0;
  int df = 0;            // lags_used - fitted_params_adjustment
  double p_value = 1.0;  // upper chi-square tail
  int lags_used = 0;
  int fitted_params_adjustment = 0;
};

struct EvalReport {
  double mae = 0.0;
  double rmse = 0.0;
  double aic = 0.0;
  LjungBoxResult ljung_box;
  std::string model_label;
};

// Q = n(n+2) sum_{k<=lags} rho_k^2/(n-k) against chi-square(lags - fitted_params).
LjungBoxResult ljung_box(const TimeSeries& residuals, int lags, int fitted_params);

// 2k - 2*loglik.
double aic(double loglik, int k);

double mae(std::span<const double> predicted, std::span<const double> actual);
double rmse(std::span<const double> predicted, std::span<const double> actual);

// Ascending AIC; ties broken by RMSE, then MAE, then label.
std::vector<EvalReport> rank_models(std::vector<EvalReport> reports);

}  // namespace tsfit

#endif  // TSFIT_DIAGNOSTICS_HPP
