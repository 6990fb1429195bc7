#include "tsfit/stationarity.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "tsfit/errors.hpp"

namespace tsfit {

namespace {

// Dickey-Fuller tau quantiles for the constant+trend regression,
// rows: sample sizes, columns: lower-tail probabilities.
constexpr std::array<double, 6> kTableN = {25, 50, 100, 250, 500, 100000};
constexpr std::array<double, 8> kTableP = {0.01, 0.025, 0.05, 0.10, 0.90, 0.95, 0.975, 0.99};
constexpr double kCrit[6][8] = {
    {-4.38, -3.95, -3.60, -3.24, -1.14, -0.80, -0.50, -0.15},
    {-4.15, -3.80, -3.50, -3.18, -1.19, -0.87, -0.58, -0.24},
    {-4.04, -3.73, -3.45, -3.15, -1.22, -0.90, -0.62, -0.28},
    {-3.99, -3.69, -3.43, -3.13, -1.23, -0.92, -0.64, -0.31},
    {-3.98, -3.68, -3.42, -3.13, -1.24, -0.93, -0.65, -0.32},
    {-3.96, -3.66, -3.41, -3.12, -1.25, -0.94, -0.66, -0.33},
};

// Linear interpolation with clamped ends, x strictly increasing.
double interp_clamped(std::span<const double> x, std::span<const double> y, double v) {
  if (v <= x.front()) return y.front();
  if (v >= x.back()) return y.back();
  std::size_t hi = 1;
  while (x[hi] < v) ++hi;
  const double w = (v - x[hi - 1]) / (x[hi] - x[hi - 1]);
  return y[hi - 1] + w * (y[hi] - y[hi - 1]);
}

}  // namespace

AdfResult adf_test(const TimeSeries& s, std::optional<int> lag_order) {
  const std::size_t n = s.size();
  const int k =
      lag_order ? *lag_order
                : static_cast<int>(std::floor(std::cbrt(static_cast<double>(n) - 1.0)));
  if (k < 0) throw InvalidSpec("adf lag order must be non-negative");
  if (n < static_cast<std::size_t>(k) + 10) {
    throw SeriesTooShort("adf test needs at least lag order + 10 observations");
  }

  const std::vector<double>& x = s.values;
  const std::size_t m = n - 1;  // length of the differenced series
  std::vector<double> dx(m);
  for (std::size_t i = 0; i < m; ++i) dx[i] = x[i + 1] - x[i];

  const std::size_t rows = m - static_cast<std::size_t>(k);
  const std::size_t cols = 3 + static_cast<std::size_t>(k);
  if (rows <= cols) throw SeriesTooShort("adf regression has more parameters than rows");

  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd target(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t i = r + static_cast<std::size_t>(k);  // index into dx
    target(static_cast<long>(r)) = dx[i];
    design(static_cast<long>(r), 0) = 1.0;
    design(static_cast<long>(r), 1) = static_cast<double>(i + 1);  // trend
    design(static_cast<long>(r), 2) = x[i];                        // lagged level
    for (int j = 1; j <= k; ++j) {
      design(static_cast<long>(r), 2 + j) = dx[i - static_cast<std::size_t>(j)];
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < static_cast<long>(cols)) {
    throw SingularRegression("adf design matrix is rank deficient (constant series?)");
  }
  Eigen::VectorXd coef = qr.solve(target);
  Eigen::VectorXd resid = target - design * coef;
  const double dof = static_cast<double>(rows - cols);
  const double sigma2 = resid.squaredNorm() / dof;

  Eigen::MatrixXd xtx = design.transpose() * design;
  Eigen::MatrixXd cov = sigma2 * xtx.ldlt().solve(Eigen::MatrixXd::Identity(
                                     static_cast<long>(cols), static_cast<long>(cols)));
  const double se = std::sqrt(cov(2, 2));
  if (!(se > 0.0) || !std::isfinite(se)) {
    throw SingularRegression("adf coefficient standard error is degenerate");
  }

  AdfResult res;
  res.statistic = coef(2) / se;
  res.lag_order = k;

  // Critical values at this sample size, then the statistic's position among them.
  std::array<double, 8> crit_at_n{};
  std::array<double, 6> col{};
  for (int j = 0; j < 8; ++j) {
    for (int i = 0; i < 6; ++i) col[static_cast<std::size_t>(i)] = kCrit[i][j];
    crit_at_n[static_cast<std::size_t>(j)] =
        interp_clamped(kTableN, col, static_cast<double>(m));
  }
  res.p_value = interp_clamped(crit_at_n, kTableP, res.statistic);
  if (res.statistic < crit_at_n.front()) {
    res.clamped = AdfResult::Clamp::low;
  } else if (res.statistic > crit_at_n.back()) {
    res.clamped = AdfResult::Clamp::high;
  }
  return res;
}

bool is_stationary(const AdfResult& r, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidSpec("alpha must lie in (0, 1)");
  return r.p_value < alpha;
}

}  // namespace tsfit
