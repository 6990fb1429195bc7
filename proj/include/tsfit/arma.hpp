#ifndef TSFIT_ARMA_HPP
#define TSFIT_ARMA_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "tsfit/series.hpp"

namespace tsfit::arma {

// Model order. At least one of p, q, include_mean must be active.
struct Spec {
  int p = 0;
  int q = 0;
  bool include_mean = true;
};

// Coefficients in the recursion
//   x_t - mean = sum_i phi_i (x_{t-i} - mean) + e_t - sum_j theta_j e_{t-j}.
// Note the MA sign: theta here is SUBTRACTED. Packages that write the MA part
// additively hold the negation of this theta.
struct Params {
  std::vector<double> phi;
  std::vector<double> theta;
  double mean = 0.0;
  double sigma2 = 1.0;
};

struct Fit {
  Spec spec;
  std::vector<double> phi;
  std::vector<double> theta;   // same sign convention as Params
  double mean = 0.0;
  double sigma2 = 0.0;
  double loglik = 0.0;
  std::vector<double> se;      // aligned with [phi..., theta..., mean?]
  std::size_t n_obs = 0;
  bool converged = false;

  // Estimated parameter count for information criteria: coefficients plus the
  // mean (when present) plus the innovation variance.
  int n_params() const { return spec.p + spec.q + (spec.include_mean ? 1 : 0) + 1; }

  Params params() const { return Params{phi, theta, mean, sigma2}; }
};

struct Forecast {
  double point = 0.0;
  double se = 0.0;
};

// True iff 1 - c_1 z - ... - c_k z^k has all roots outside the unit circle.
// Stationarity check for phi; with the subtracted-theta convention the same
// predicate is the invertibility check for theta.
bool roots_outside_unit_circle(std::span<const double> coef);

// First `count` weights of the MA(inf) representation (psi_0 = 1). theta is
// taken in the subtracted convention of Params. Forecast error variance at
// horizon h is sigma2 * sum_{j<h} psi_j^2.
std::vector<double> psi_weights(std::span<const double> phi, std::span<const double> theta,
                                std::size_t count);

// Gaussian simulation with a 10*(p+q+1) burn-in; deterministic per seed.
TimeSeries simulate(const Spec& spec, const Params& params, std::size_t n, std::uint64_t seed);

// Exact Gaussian log-likelihood (state-space innovations form): the
// log-density of the implied multivariate normal at the given parameters.
double loglik(const TimeSeries& s, const Spec& spec, const Params& params);

// Exact maximum likelihood. CSS-refined start, optimization in
// partial-autocorrelation-transformed coordinates (fitted parameters are
// always stationary and invertible), standard errors from the inverse
// numerical Hessian. Non-convergence is reported through the flag, not thrown.
Fit fit(const TimeSeries& s, const Spec& spec);

// Minimum-MSE forecasts with psi-weight standard errors.
std::vector<Forecast> forecast(const Fit& fit, const TimeSeries& s, std::size_t horizon);

// Rolling one-step-ahead predictions for positions [from, n) of the series,
// each using only the true observations before it. No refitting.
std::vector<double> predict_one_step(const Fit& fit, const TimeSeries& s, std::size_t from);

// Innovation residuals e_t = x_t - x_hat_{t|t-1}; same length as the series.
TimeSeries residuals(const Fit& fit, const TimeSeries& s);

}  // namespace tsfit::arma

#endif  // TSFIT_ARMA_HPP
