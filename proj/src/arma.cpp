#include "tsfit/arma.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tsfit/errors.hpp"
#include "tsfit/levinson.hpp"
#include "tsfit/numeric.hpp"
#include "tsfit/optimize.hpp"

namespace tsfit::arma {

bool roots_outside_unit_circle(std::span<const double> coef) {
  return lev::all_roots_outside(coef);
}

namespace {

constexpr double kTwoPi = 6.283185307179586;

void check_params(const Spec& spec, const Params& params) {
  if (static_cast<int>(params.phi.size()) != spec.p ||
      static_cast<int>(params.theta.size()) != spec.q) {
    throw InvalidSpec("parameter vectors do not match the model order");
  }
  if (!(params.sigma2 > 0.0)) throw InvalidSpec("sigma2 must be positive");
}

// Harvey state-space form: state dimension r = max(p, q+1), transition
// T(i,0) = phi_{i+1}, T(i,i+1) = 1, innovation loading (1, -theta_1, ...).
// The minus signs convert the subtracted-theta convention into the additive
// one the filter algebra expects.
struct StateSpace {
  long r = 1;
  Eigen::MatrixXd T;
  Eigen::VectorXd Rv;
  Eigen::MatrixXd P0;  // stationary state covariance at unit innovation variance
};

StateSpace make_state_space(std::span<const double> phi, std::span<const double> theta) {
  if (!lev::all_roots_outside(phi)) {
    throw NonStationaryParams("AR polynomial has a root on or inside the unit circle");
  }
  const long p = static_cast<long>(phi.size());
  const long q = static_cast<long>(theta.size());
  StateSpace ss;
  ss.r = std::max(p, q + 1);
  ss.T = Eigen::MatrixXd::Zero(ss.r, ss.r);
  for (long i = 0; i < p; ++i) ss.T(i, 0) = phi[static_cast<std::size_t>(i)];
  for (long i = 0; i + 1 < ss.r; ++i) ss.T(i, i + 1) = 1.0;
  ss.Rv = Eigen::VectorXd::Zero(ss.r);
  ss.Rv(0) = 1.0;
  for (long j = 0; j < q; ++j) ss.Rv(j + 1) = -theta[static_cast<std::size_t>(j)];

  // Stationary covariance: P = T P T' + R R', solved as a dense linear system
  // in the r^2 stacked unknowns.
  const long rr = ss.r * ss.r;
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(rr, rr);
  for (long i = 0; i < ss.r; ++i) {
    for (long j = 0; j < ss.r; ++j) {
      for (long k = 0; k < ss.r; ++k) {
        for (long l = 0; l < ss.r; ++l) {
          lhs(i + ss.r * j, k + ss.r * l) -= ss.T(i, k) * ss.T(j, l);
        }
      }
    }
  }
  Eigen::MatrixXd rhs_mat = ss.Rv * ss.Rv.transpose();
  Eigen::VectorXd vec_p = lhs.partialPivLu().solve(
      Eigen::Map<Eigen::VectorXd>(rhs_mat.data(), rr));
  ss.P0 = Eigen::Map<Eigen::MatrixXd>(vec_p.data(), ss.r, ss.r);
  ss.P0 = 0.5 * (ss.P0 + ss.P0.transpose()).eval();
  return ss;
}

struct FilterRun {
  double ssq = 0.0;
  double sumlog = 0.0;
  std::vector<double> innovation;  // w_t - w_hat_{t|t-1}
  std::vector<double> gain;        // prediction variance at unit sigma2
  Eigen::VectorXd a_end;           // filtered state after the last observation
};

// Kalman filter at unit innovation variance over the demeaned series.
FilterRun run_filter(const StateSpace& ss, std::span<const double> w, bool keep_path) {
  const long r = ss.r;
  const std::size_t n = w.size();
  FilterRun run;
  if (keep_path) {
    run.innovation.resize(n);
    run.gain.resize(n);
  }

  Eigen::VectorXd a = Eigen::VectorXd::Zero(r);
  Eigen::MatrixXd p_filt = ss.P0;
  Eigen::VectorXd anew(r), m_vec(r);
  Eigen::MatrixXd p_pred(r, r);

  for (std::size_t t = 0; t < n; ++t) {
    anew.noalias() = ss.T * a;
    if (t == 0) {
      p_pred = ss.P0;
    } else {
      p_pred.noalias() = ss.T * p_filt * ss.T.transpose();
      p_pred.noalias() += ss.Rv * ss.Rv.transpose();
    }
    const double e = w[t] - anew(0);
    const double f = p_pred(0, 0);
    if (!(f > 0.0) || !std::isfinite(f)) {
      throw NonStationaryParams("prediction variance degenerated in the filter");
    }
    run.ssq += e * e / f;
    run.sumlog += std::log(f);
    if (keep_path) {
      run.innovation[t] = e;
      run.gain[t] = f;
    }
    m_vec = p_pred.col(0);
    a = anew + m_vec * (e / f);
    p_filt = p_pred - (m_vec * m_vec.transpose()) / f;
  }
  run.a_end = a;
  return run;
}

std::vector<double> demean(const TimeSeries& s, double mean) {
  std::vector<double> w(s.values.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = s.values[i] - mean;
  return w;
}

double profile_neg_loglik_per_obs(const StateSpace& ss, std::span<const double> w) {
  FilterRun run = run_filter(ss, w, false);
  const double n = static_cast<double>(w.size());
  return 0.5 * (std::log(run.ssq / n) + run.sumlog / n);
}

}  // namespace

std::vector<double> psi_weights(std::span<const double> phi, std::span<const double> theta,
                                std::size_t count) {
  std::vector<double> psi(count, 0.0);
  if (count == 0) return psi;
  psi[0] = 1.0;
  for (std::size_t j = 1; j < count; ++j) {
    double v = (j <= theta.size()) ? -theta[j - 1] : 0.0;
    for (std::size_t i = 1; i <= std::min(j, phi.size()); ++i) {
      v += phi[i - 1] * psi[j - i];
    }
    psi[j] = v;
  }
  return psi;
}

TimeSeries simulate(const Spec& spec, const Params& params, std::size_t n, std::uint64_t seed) {
  check_params(spec, params);
  if (n < 1) throw InvalidSpec("simulation length must be positive");
  if (!lev::all_roots_outside(params.phi)) {
    throw NonStationaryParams("AR polynomial has a root on or inside the unit circle");
  }
  if (!lev::all_roots_outside(params.theta)) {
    throw NonInvertibleParams("MA polynomial has a root on or inside the unit circle");
  }

  const std::size_t burn = 10 * static_cast<std::size_t>(spec.p + spec.q + 1);
  const std::size_t total = n + burn;
  num::Rng rng(seed);
  const double sd = std::sqrt(params.sigma2);

  std::vector<double> dev(total, 0.0), eps(total, 0.0);
  for (std::size_t t = 0; t < total; ++t) {
    eps[t] = rng.normal(0.0, sd);
    double v = eps[t];
    for (int i = 1; i <= spec.p; ++i) {
      if (t >= static_cast<std::size_t>(i)) {
        v += params.phi[static_cast<std::size_t>(i - 1)] * dev[t - static_cast<std::size_t>(i)];
      }
    }
    for (int j = 1; j <= spec.q; ++j) {
      if (t >= static_cast<std::size_t>(j)) {
        v -= params.theta[static_cast<std::size_t>(j - 1)] * eps[t - static_cast<std::size_t>(j)];
      }
    }
    dev[t] = v;
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = params.mean + dev[burn + i];
  return make_series(std::move(values));
}

double loglik(const TimeSeries& s, const Spec& spec, const Params& params) {
  check_params(spec, params);
  const std::size_t n = s.size();
  if (n < static_cast<std::size_t>(spec.p + spec.q + 1)) {
    throw SeriesTooShort("series shorter than p + q + 1");
  }
  StateSpace ss = make_state_space(params.phi, params.theta);
  std::vector<double> w = demean(s, params.mean);
  FilterRun run = run_filter(ss, w, false);
  const double nd = static_cast<double>(n);
  return -0.5 * nd * std::log(kTwoPi) - 0.5 * nd * std::log(params.sigma2) - 0.5 * run.sumlog -
         0.5 * run.ssq / params.sigma2;
}

namespace {

struct PackLayout {
  int p = 0;
  int q = 0;
  bool mean = false;
  int size() const { return p + q + (mean ? 1 : 0); }
};

Params unpack_transformed(const Eigen::VectorXd& u, const PackLayout& lay) {
  Params out;
  std::vector<double> kappa(static_cast<std::size_t>(lay.p));
  for (int i = 0; i < lay.p; ++i) kappa[static_cast<std::size_t>(i)] = std::tanh(u(i));
  out.phi = lev::pacf_to_ar(kappa);
  kappa.assign(static_cast<std::size_t>(lay.q), 0.0);
  for (int j = 0; j < lay.q; ++j) kappa[static_cast<std::size_t>(j)] = std::tanh(u(lay.p + j));
  out.theta = lev::pacf_to_ar(kappa);
  out.mean = lay.mean ? u(lay.p + lay.q) : 0.0;
  return out;
}

double css_neg_loglik_per_obs(std::span<const double> w, const Params& par) {
  const int p = static_cast<int>(par.phi.size());
  const int q = static_cast<int>(par.theta.size());
  const std::size_t n = w.size();
  std::vector<double> e(n, 0.0);
  double ssq = 0.0;
  std::size_t used = 0;
  for (std::size_t t = static_cast<std::size_t>(p); t < n; ++t) {
    double v = w[t] - par.mean;
    for (int i = 1; i <= p; ++i) {
      v -= par.phi[static_cast<std::size_t>(i - 1)] *
           (w[t - static_cast<std::size_t>(i)] - par.mean);
    }
    for (int j = 1; j <= q; ++j) {
      if (t >= static_cast<std::size_t>(p + j)) {
        v += par.theta[static_cast<std::size_t>(j - 1)] * e[t - static_cast<std::size_t>(j)];
      }
    }
    e[t] = v;
    ssq += v * v;
    ++used;
  }
  if (used == 0) return 0.0;
  return 0.5 * std::log(ssq / static_cast<double>(used));
}

double sample_sd(std::span<const double> v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return n > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
}

}  // namespace

Fit fit(const TimeSeries& s, const Spec& spec) {
  if (spec.p < 0 || spec.q < 0 || spec.p + spec.q + (spec.include_mean ? 1 : 0) < 1) {
    throw InvalidSpec("model must estimate at least one of phi, theta, mean");
  }
  const std::size_t n = s.size();
  if (n < 5 * static_cast<std::size_t>(spec.p + spec.q + 1)) {
    throw TooFewObservations("fit needs at least 5*(p+q+1) observations");
  }

  // Condition the optimization by rescaling the data; everything is mapped
  // back at the end (phi/theta are scale-free).
  double scale = sample_sd(s.values);
  if (!(scale > 0.0) || !std::isfinite(scale)) scale = 1.0;
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = s.values[i] / scale;
  const double w_mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(n);

  const PackLayout lay{spec.p, spec.q, spec.include_mean};
  Eigen::VectorXd u0 = Eigen::VectorXd::Zero(lay.size());

  // Start from Yule-Walker partials for the AR side when they are available.
  if (spec.p > 0) {
    try {
      const std::size_t want = static_cast<std::size_t>(spec.p);
      double denom = 0.0;
      for (double v : w) denom += (v - w_mean) * (v - w_mean);
      if (denom > 0.0) {
        std::vector<double> rho(want);
        for (std::size_t k = 1; k <= want; ++k) {
          double num = 0.0;
          for (std::size_t t = 0; t + k < n; ++t) {
            num += (w[t] - w_mean) * (w[t + k] - w_mean);
          }
          rho[k - 1] = num / denom;
        }
        std::vector<double> kappa = lev::partial_from_acf(rho);
        for (int i = 0; i < spec.p; ++i) {
          double k = std::clamp(kappa[static_cast<std::size_t>(i)], -0.95, 0.95);
          u0(i) = std::atanh(k);
        }
      }
    } catch (const Error&) {
      u0.head(spec.p).setZero();
    }
  }
  if (spec.include_mean) u0(lay.p + lay.q) = w_mean;

  const auto guard = [](auto&& fn) {
    return [fn](const Eigen::VectorXd& u) -> double {
      try {
        return fn(u);
      } catch (const Error&) {
        return 1e10;
      }
    };
  };

  // Conditional-sum-of-squares refinement of the start point.
  opt::Objective css_obj = guard([&](const Eigen::VectorXd& u) {
    return css_neg_loglik_per_obs(w, unpack_transformed(u, lay));
  });
  opt::Options css_opts;
  css_opts.max_iterations = 200;
  css_opts.rel_tol = 1e-8;
  Eigen::VectorXd u1 = opt::nelder_mead(css_obj, u0, css_opts).x;

  // Exact-likelihood stage.
  opt::Objective ml_obj = guard([&](const Eigen::VectorXd& u) {
    Params par = unpack_transformed(u, lay);
    StateSpace ss = make_state_space(par.phi, par.theta);
    std::vector<double> centered(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) centered[i] = w[i] - par.mean;
    return profile_neg_loglik_per_obs(ss, centered);
  });
  opt::Options ml_opts;
  ml_opts.max_iterations = 500;
  ml_opts.rel_tol = 1e-10;
  opt::Result best = opt::minimize(ml_obj, u1, ml_opts);
  if (ml_obj(u0) < best.fmin) {  // never degrade below the start point
    best = opt::minimize(ml_obj, u0, ml_opts);
  }

  Params hat = unpack_transformed(best.x, lay);
  StateSpace ss = make_state_space(hat.phi, hat.theta);
  std::vector<double> centered(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) centered[i] = w[i] - hat.mean;
  FilterRun run = run_filter(ss, centered, false);
  const double nd = static_cast<double>(n);
  const double sigma2_scaled = run.ssq / nd;
  const double loglik_scaled =
      -0.5 * nd * (std::log(kTwoPi) + 1.0 + std::log(sigma2_scaled)) - 0.5 * run.sumlog;

  Fit out;
  out.spec = spec;
  out.phi = hat.phi;
  out.theta = hat.theta;
  out.mean = hat.mean * scale;
  out.sigma2 = std::max(sigma2_scaled, 1e-300) * scale * scale;
  out.loglik = loglik_scaled - nd * std::log(scale);
  out.n_obs = n;
  out.converged = best.converged && std::isfinite(best.fmin);

  // Observed-information standard errors from the profile objective in
  // natural coordinates: cov = (n * hessian)^(-1).
  const int dim = lay.size();
  out.se.assign(static_cast<std::size_t>(dim), std::numeric_limits<double>::quiet_NaN());
  Eigen::VectorXd natural(dim);
  for (int i = 0; i < spec.p; ++i) natural(i) = hat.phi[static_cast<std::size_t>(i)];
  for (int j = 0; j < spec.q; ++j) natural(lay.p + j) = hat.theta[static_cast<std::size_t>(j)];
  if (spec.include_mean) natural(lay.p + lay.q) = hat.mean;

  opt::Objective natural_obj = guard([&](const Eigen::VectorXd& v) {
    Params par;
    par.phi.assign(v.data(), v.data() + spec.p);
    par.theta.assign(v.data() + spec.p, v.data() + spec.p + spec.q);
    par.mean = spec.include_mean ? v(lay.p + lay.q) : 0.0;
    StateSpace local = make_state_space(par.phi, par.theta);
    std::vector<double> cen(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) cen[i] = w[i] - par.mean;
    return profile_neg_loglik_per_obs(local, cen);
  });
  Eigen::MatrixXd hess = opt::fd_hessian(natural_obj, natural, 1e-4) * nd;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
  if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
    Eigen::MatrixXd cov = ldlt.solve(Eigen::MatrixXd::Identity(dim, dim));
    bool ok = cov.allFinite();
    for (int i = 0; ok && i < dim; ++i) ok = cov(i, i) > 0.0;
    if (ok) {
      for (int i = 0; i < dim; ++i) out.se[static_cast<std::size_t>(i)] = std::sqrt(cov(i, i));
      if (spec.include_mean) out.se[static_cast<std::size_t>(lay.p + lay.q)] *= scale;
    }
  }
  return out;
}

std::vector<Forecast> forecast(const Fit& fit, const TimeSeries& s, std::size_t horizon) {
  StateSpace ss = make_state_space(fit.phi, fit.theta);
  std::vector<double> w = demean(s, fit.mean);
  FilterRun run = run_filter(ss, w, false);

  std::vector<double> psi = psi_weights(fit.phi, fit.theta, horizon);
  std::vector<Forecast> out(horizon);
  Eigen::VectorXd a = run.a_end;
  double cum_var = 0.0;
  for (std::size_t h = 0; h < horizon; ++h) {
    a = (ss.T * a).eval();
    cum_var += psi[h] * psi[h];
    out[h].point = fit.mean + a(0);
    out[h].se = std::sqrt(fit.sigma2 * cum_var);
  }
  return out;
}

std::vector<double> predict_one_step(const Fit& fit, const TimeSeries& s, std::size_t from) {
  const std::size_t n = s.size();
  if (from < static_cast<std::size_t>(fit.spec.p + fit.spec.q) || from >= n) {
    throw IndexOutOfRange("one-step prediction start index out of range");
  }
  StateSpace ss = make_state_space(fit.phi, fit.theta);
  std::vector<double> w = demean(s, fit.mean);
  FilterRun run = run_filter(ss, w, true);

  std::vector<double> pred(n - from);
  for (std::size_t t = from; t < n; ++t) {
    // innovation = w_t - w_hat_{t|t-1}, so the prediction is recoverable
    pred[t - from] = s.values[t] - run.innovation[t];
  }
  return pred;
}

TimeSeries residuals(const Fit& fit, const TimeSeries& s) {
  StateSpace ss = make_state_space(fit.phi, fit.theta);
  std::vector<double> w = demean(s, fit.mean);
  FilterRun run = run_filter(ss, w, true);
  TimeSeries out;
  out.values = std::move(run.innovation);
  out.dates = s.dates;
  return out;
}

}  // namespace tsfit::arma
