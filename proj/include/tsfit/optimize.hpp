#ifndef TSFIT_OPTIMIZE_HPP
#define TSFIT_OPTIMIZE_HPP

#include <Eigen/Dense>
#include <functional>

namespace tsfit::opt {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct Options {
  int max_iterations = 500;
  double rel_tol = 1e-10;     // stop when the relative objective improvement drops below this
  double initial_step = 0.1;  // Nelder-Mead simplex edge
  double grad_step = 1e-6;    // central-difference step (scaled by max(1, |x_i|))
};

struct Result {
  Eigen::VectorXd x;
  double fmin = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Central finite-difference gradient.
Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x, double rel_step = 1e-6);

// Central finite-difference Hessian (symmetrized).
Eigen::MatrixXd fd_hessian(const Objective& f, const Eigen::VectorXd& x, double rel_step = 1e-4);

// Downhill simplex. Robust to non-smooth penalty walls.
Result nelder_mead(const Objective& f, const Eigen::VectorXd& x0, const Options& opts = {});

// BFGS with finite-difference gradients and a backtracking line search.
Result bfgs(const Objective& f, const Eigen::VectorXd& x0, const Options& opts = {});

// BFGS first, Nelder-Mead refinement if BFGS stalls; best point wins.
Result minimize(const Objective& f, const Eigen::VectorXd& x0, const Options& opts = {});

}  // namespace tsfit::opt

#endif  // TSFIT_OPTIMIZE_HPP
