#include "tsfit/garma.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tsfit/errors.hpp"
#include "tsfit/numeric.hpp"
#include "tsfit/optimize.hpp"

namespace tsfit::garma {

namespace {

void check_spec(const Spec& spec) {
  if (spec.p < 0 || spec.q < 0) throw InvalidSpec("garma orders must be non-negative");
  if (!(spec.clamp_c > 0.0 && spec.clamp_c < 1.0)) {
    throw InvalidSpec("clamp_c must lie in (0, 1)");
  }
}

void check_params(const Spec& spec, const Params& params) {
  check_spec(spec);
  if (params.beta.empty()) throw InvalidSpec("garma params need at least an intercept");
  if (static_cast<int>(params.phi.size()) != spec.p ||
      static_cast<int>(params.theta.size()) != spec.q) {
    throw InvalidSpec("garma parameter vectors do not match the model order");
  }
  for (double b : params.beta) {
    if (!std::isfinite(b)) throw InvalidSpec("garma parameters must be finite");
  }
}

double linear_predictor(const Params& params, std::span<const double> x_row) {
  if (x_row.empty()) return params.beta.front();
  if (x_row.size() != params.beta.size()) {
    throw InvalidSpec("covariate row length does not match beta");
  }
  double eta = 0.0;
  for (std::size_t i = 0; i < x_row.size(); ++i) eta += x_row[i] * params.beta[i];
  return eta;
}

void check_counts(const TimeSeries& s) {
  for (double y : s.values) {
    if (y < 0.0 || y != std::floor(y)) {
      throw NonCountData("observations must be non-negative integers");
    }
  }
}

}  // namespace

double mean_recursion(const Spec& spec, const Params& params, std::span<const double> y_hist,
                      std::span<const double> mu_hist, std::span<const double> x_row) {
  check_params(spec, params);
  const std::size_t need = static_cast<std::size_t>(std::max(spec.p, spec.q));
  if (y_hist.size() < need || mu_hist.size() < static_cast<std::size_t>(spec.q)) {
    throw SeriesTooShort("history shorter than the recursion order");
  }

  const double xb = linear_predictor(params, x_row);
  double eta = xb;
  for (int j = 1; j <= spec.p; ++j) {
    const double y_star =
        std::max(y_hist[y_hist.size() - static_cast<std::size_t>(j)], spec.clamp_c);
    eta += params.phi[static_cast<std::size_t>(j - 1)] * (std::log(y_star) - xb);
  }
  for (int j = 1; j <= spec.q; ++j) {
    const double y_star =
        std::max(y_hist[y_hist.size() - static_cast<std::size_t>(j)], spec.clamp_c);
    const double mu_past = mu_hist[mu_hist.size() - static_cast<std::size_t>(j)];
    eta += params.theta[static_cast<std::size_t>(j - 1)] * (std::log(y_star) - std::log(mu_past));
  }
  if (!(eta <= 700.0)) {
    throw OverflowGuard("link-scale predictor exceeded 700; recursion diverged");
  }
  return std::exp(eta);
}

namespace {

// mu_t for every t; the first max(p,q) entries are pinned at y* (conditioning
// convention, which makes their MA terms vanish).
std::vector<double> mean_path(const TimeSeries& counts, const Spec& spec, const Params& params) {
  const std::size_t n = counts.size();
  const std::size_t m = static_cast<std::size_t>(std::max(spec.p, spec.q));
  std::vector<double> mu(n, 0.0);
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    mu[t] = std::max(counts.values[t], spec.clamp_c);
  }
  for (std::size_t t = m; t < n; ++t) {
    mu[t] = mean_recursion(spec, params,
                           std::span<const double>(counts.values.data(), t),
                           std::span<const double>(mu.data(), t));
  }
  return mu;
}

}  // namespace

double loglik(const TimeSeries& counts, const Spec& spec, const Params& params) {
  check_params(spec, params);
  check_counts(counts);
  const std::size_t n = counts.size();
  const std::size_t m = static_cast<std::size_t>(std::max(spec.p, spec.q));
  if (n <= m) throw SeriesTooShort("series no longer than the conditioning prefix");

  std::vector<double> mu = mean_path(counts, spec, params);
  double ll = 0.0;
  for (std::size_t t = m; t < n; ++t) {
    const double y = counts.values[t];
    ll += y * std::log(mu[t]) - mu[t] - num::log_factorial(y);
  }
  return ll;
}

Fit fit(const TimeSeries& counts, const Spec& spec) {
  check_spec(spec);
  check_counts(counts);
  const std::size_t n = counts.size();
  if (n < 10 * static_cast<std::size_t>(spec.p + spec.q + 1)) {
    throw TooFewObservations("garma fit needs at least 10*(p+q+1) observations");
  }

  double clamped_mean = 0.0;
  for (double y : counts.values) clamped_mean += std::max(y, spec.clamp_c);
  clamped_mean /= static_cast<double>(n);

  const int dim = 1 + spec.p + spec.q;
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(dim);
  x0(0) = std::log(clamped_mean);

  auto unpack = [&](const Eigen::VectorXd& v) {
    Params par;
    par.beta = {v(0)};
    par.phi.assign(v.data() + 1, v.data() + 1 + spec.p);
    par.theta.assign(v.data() + 1 + spec.p, v.data() + dim);
    return par;
  };

  opt::Objective neg_ll = [&](const Eigen::VectorXd& v) -> double {
    try {
      return -loglik(counts, spec, unpack(v)) / static_cast<double>(n);
    } catch (const Error&) {
      return 1e10;
    }
  };

  opt::Options opts;
  opts.max_iterations = 500;
  opts.rel_tol = 1e-12;
  opt::Result best = opt::minimize(neg_ll, x0, opts);

  Params hat = unpack(best.x);
  Fit out;
  out.spec = spec;
  out.beta = hat.beta;
  out.phi = hat.phi;
  out.theta = hat.theta;
  out.mu = mean_path(counts, spec, hat);
  out.loglik = loglik(counts, spec, hat);
  out.converged = best.converged && std::isfinite(best.fmin) && best.fmin < 1e9;

  out.beta_se.assign(1, std::numeric_limits<double>::quiet_NaN());
  out.phi_se.assign(static_cast<std::size_t>(spec.p), std::numeric_limits<double>::quiet_NaN());
  out.theta_se.assign(static_cast<std::size_t>(spec.q), std::numeric_limits<double>::quiet_NaN());

  opt::Objective neg_ll_full = [&](const Eigen::VectorXd& v) -> double {
    try {
      return -loglik(counts, spec, unpack(v));
    } catch (const Error&) {
      return 1e10;
    }
  };
  Eigen::MatrixXd hess = opt::fd_hessian(neg_ll_full, best.x, 1e-5);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
  if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
    Eigen::MatrixXd cov = ldlt.solve(Eigen::MatrixXd::Identity(dim, dim));
    bool ok = cov.allFinite();
    for (int i = 0; ok && i < dim; ++i) ok = cov(i, i) > 0.0;
    if (ok) {
      out.beta_se[0] = std::sqrt(cov(0, 0));
      for (int i = 0; i < spec.p; ++i) {
        out.phi_se[static_cast<std::size_t>(i)] = std::sqrt(cov(1 + i, 1 + i));
      }
      for (int j = 0; j < spec.q; ++j) {
        out.theta_se[static_cast<std::size_t>(j)] =
            std::sqrt(cov(1 + spec.p + j, 1 + spec.p + j));
      }
    }
  }
  return out;
}

TimeSeries simulate(const Spec& spec, const Params& params, std::size_t n, std::uint64_t seed) {
  check_params(spec, params);
  if (n < 1) throw InvalidSpec("simulation length must be positive");
  const std::size_t m = static_cast<std::size_t>(std::max(spec.p, spec.q));

  num::Rng rng(seed);
  std::vector<double> y(n, 0.0), mu(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    if (t < m) {
      const double eta = linear_predictor(params, {});
      if (!(eta <= 700.0)) throw OverflowGuard("link-scale predictor exceeded 700");
      mu[t] = std::exp(eta);
    } else {
      mu[t] = mean_recursion(spec, params, std::span<const double>(y.data(), t),
                             std::span<const double>(mu.data(), t));
    }
    y[t] = static_cast<double>(rng.poisson(mu[t]));
    if (t < m) mu[t] = std::max(y[t], spec.clamp_c);  // conditioning prefix convention
  }
  return make_series(std::move(y));
}

}  // namespace tsfit::garma
