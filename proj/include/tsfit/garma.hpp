#ifndef TSFIT_GARMA_HPP
#define TSFIT_GARMA_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "tsfit/series.hpp"

namespace tsfit::garma {

// Poisson response, natural-log link. Zero counts are clamped to clamp_c
// inside the link-scale recursion only (the Poisson pmf always sees the raw
// count).
struct Spec {
  int p = 0;
  int q = 0;
  double clamp_c = 0.1;
};

struct Params {
  std::vector<double> beta;   // regression coefficients; {intercept} in this artifact
  std::vector<double> phi;
  std::vector<double> theta;
};

struct Fit {
  Spec spec;
  std::vector<double> beta;
  std::vector<double> beta_se;
  std::vector<double> phi;
  std::vector<double> phi_se;
  std::vector<double> theta;
  std::vector<double> theta_se;
  std::vector<double> mu;     // fitted conditional means, one per observation
  double loglik = 0.0;
  bool converged = false;
};

// One step of the conditional-mean recursion:
//   ln(mu_t) = x_t'beta + sum_j phi_j [ln y*_{t-j} - x_{t-j}'beta]
//                       + sum_j theta_j [ln y*_{t-j} - ln mu_{t-j}],
// with y* = max(y, clamp_c). y_hist / mu_hist end at t-1; x_row is the
// covariate row (empty means intercept-only, and past rows are assumed equal
// to the current one). Throws OverflowGuard when the predictor exceeds 700.
double mean_recursion(const Spec& spec, const Params& params, std::span<const double> y_hist,
                      std::span<const double> mu_hist, std::span<const double> x_row = {});

// Conditional Poisson log-likelihood: the first max(p,q) observations
// condition the recursion (their mu is pinned at y*) and do not contribute.
double loglik(const TimeSeries& counts, const Spec& spec, const Params& params);

// Maximum likelihood, intercept-only regression. Initialization
// beta_0 = ln(mean of clamped counts), phi = theta = 0; standard errors from
// the inverse numerical Hessian; non-convergence flagged, not thrown.
Fit fit(const TimeSeries& counts, const Spec& spec);

// Sequential Poisson draws from the mean recursion; the first max(p,q) draws
// use the intercept-only rate, mirroring the conditioning convention.
TimeSeries simulate(const Spec& spec, const Params& params, std::size_t n, std::uint64_t seed);

}  // namespace tsfit::garma

#endif  // TSFIT_GARMA_HPP
