#include "tsfit/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace tsfit::opt {

namespace {

constexpr double kHuge = std::numeric_limits<double>::infinity();

double safe_eval(const Objective& f, const Eigen::VectorXd& x) {
  double v = f(x);
  return std::isfinite(v) ? v : kHuge;
}

}  // namespace

Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x, double rel_step) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd g(n);
  Eigen::VectorXd xp = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    double h = rel_step * std::max(1.0, std::abs(x[i]));
    xp[i] = x[i] + h;
    double fp = safe_eval(f, xp);
    xp[i] = x[i] - h;
    double fm = safe_eval(f, xp);
    xp[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Eigen::MatrixXd fd_hessian(const Objective& f, const Eigen::VectorXd& x, double rel_step) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd h_mat(n, n);
  Eigen::VectorXd step(n);
  for (Eigen::Index i = 0; i < n; ++i) step[i] = rel_step * std::max(1.0, std::abs(x[i]));

  const double f0 = safe_eval(f, x);
  Eigen::VectorXd xp = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    xp[i] = x[i] + step[i];
    double fp = safe_eval(f, xp);
    xp[i] = x[i] - step[i];
    double fm = safe_eval(f, xp);
    xp[i] = x[i];
    h_mat(i, i) = (fp - 2.0 * f0 + fm) / (step[i] * step[i]);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      xp[i] = x[i] + step[i];
      xp[j] = x[j] + step[j];
      double fpp = safe_eval(f, xp);
      xp[j] = x[j] - step[j];
      double fpm = safe_eval(f, xp);
      xp[i] = x[i] - step[i];
      xp[j] = x[j] + step[j];
      double fmp = safe_eval(f, xp);
      xp[j] = x[j] - step[j];
      double fmm = safe_eval(f, xp);
      xp[i] = x[i];
      xp[j] = x[j];
      double v = (fpp - fpm - fmp + fmm) / (4.0 * step[i] * step[j]);
      h_mat(i, j) = v;
      h_mat(j, i) = v;
    }
  }
  return h_mat;
}

Result nelder_mead(const Objective& f, const Eigen::VectorXd& x0, const Options& opts) {
  const int n = static_cast<int>(x0.size());
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  std::vector<Eigen::VectorXd> pts(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (int i = 0; i < n; ++i) {
    double h = opts.initial_step * std::max(1.0, std::abs(x0[i]));
    pts[i + 1][i] += h;
  }
  for (int i = 0; i <= n; ++i) fv[i] = safe_eval(f, pts[i]);

  std::vector<int> order(n + 1);
  Result res;
  res.converged = false;
  int iter = 0;
  const int max_iter = opts.max_iterations * std::max(1, n);
  for (; iter < max_iter; ++iter) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    const int best = order[0], worst = order[n], second_worst = order[n - 1];

    double spread = std::abs(fv[worst] - fv[best]);
    double scale = std::abs(fv[best]) + std::abs(fv[worst]) + 1e-30;
    if (std::isfinite(fv[worst]) && spread <= opts.rel_tol * scale) {
      res.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += pts[i];
    centroid /= n;

    Eigen::VectorXd xr = centroid + alpha * (centroid - pts[worst]);
    double fr = safe_eval(f, xr);
    if (fr < fv[best]) {
      Eigen::VectorXd xe = centroid + gamma * (xr - centroid);
      double fe = safe_eval(f, xe);
      if (fe < fr) {
        pts[worst] = xe;
        fv[worst] = fe;
      } else {
        pts[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second_worst]) {
      pts[worst] = xr;
      fv[worst] = fr;
    } else {
      Eigen::VectorXd xc = centroid + rho * (pts[worst] - centroid);
      double fc = safe_eval(f, xc);
      if (fc < fv[worst]) {
        pts[worst] = xc;
        fv[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          pts[i] = pts[best] + sigma * (pts[i] - pts[best]);
          fv[i] = safe_eval(f, pts[i]);
        }
      }
    }
  }

  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (fv[i] < fv[best]) best = i;
  res.x = pts[best];
  res.fmin = fv[best];
  res.iterations = iter;
  return res;
}

Result bfgs(const Objective& f, const Eigen::VectorXd& x0, const Options& opts) {
  const Eigen::Index n = x0.size();
  Eigen::VectorXd x = x0;
  double fx = safe_eval(f, x);
  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd g = fd_gradient(f, x, opts.grad_step);

  Result res;
  res.converged = false;
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    if (!g.allFinite()) break;
    Eigen::VectorXd dir = -(h_inv * g);
    double slope = g.dot(dir);
    if (slope >= 0.0) {  // not a descent direction, reset the metric
      h_inv.setIdentity();
      dir = -g;
      slope = g.dot(dir);
      if (slope >= 0.0) break;
    }

    // Backtracking Armijo search.
    double t = 1.0;
    double fn = kHuge;
    Eigen::VectorXd xn;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      xn = x + t * dir;
      fn = safe_eval(f, xn);
      if (fn <= fx + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    Eigen::VectorXd gn = fd_gradient(f, xn, opts.grad_step);
    Eigen::VectorXd s = xn - x;
    Eigen::VectorXd y = gn - g;
    double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      Eigen::VectorXd hy = h_inv * y;
      double yhy = y.dot(hy);
      h_inv += ((sy + yhy) / (sy * sy)) * (s * s.transpose()) -
               (hy * s.transpose() + s * hy.transpose()) / sy;
    }

    double improvement = fx - fn;
    x = xn;
    g = gn;
    double prev = fx;
    fx = fn;
    if (improvement <= opts.rel_tol * (std::abs(prev) + std::abs(fn) + 1e-30)) {
      res.converged = true;
      ++iter;
      break;
    }
  }
  res.x = x;
  res.fmin = fx;
  res.iterations = iter;
  return res;
}

Result minimize(const Objective& f, const Eigen::VectorXd& x0, const Options& opts) {
  Result b = bfgs(f, x0, opts);
  Result nm = nelder_mead(f, b.x, opts);
  if (nm.fmin < b.fmin) {
    nm.iterations += b.iterations;
    nm.converged = nm.converged || b.converged;
    return nm;
  }
  b.converged = b.converged || nm.converged;
  return b;
}

}  // namespace tsfit::opt
