#include "tsfit/numeric.hpp"

#include <cmath>
#include <limits>

#include "tsfit/errors.hpp"

namespace tsfit::num {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace {

double normal_pdf(double x) {
  static const double inv_sqrt_2pi = 0.3989422804014327;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw NumericalDegeneracy("normal_quantile: p must lie in (0, 1)");
  }
  // Crude start, then Newton on Phi(x) - p. The CDF is evaluated through
  // erfc, so each step is accurate to ~1 ulp and convergence is quadratic.
  double q = std::min(p, 1.0 - p);
  double x = std::sqrt(-2.0 * std::log(q));
  x = x - (2.515517 + 0.802853 * x + 0.010328 * x * x) /
              (1.0 + 1.432788 * x + 0.189269 * x * x + 0.001308 * x * x * x);
  if (p < 0.5) x = -x;
  for (int i = 0; i < 8; ++i) {
    double err = normal_cdf(x) - p;
    double d = normal_pdf(x);
    if (d <= 0.0) break;
    double step = err / d;
    x -= step;
    if (std::abs(step) < 1e-14 * (1.0 + std::abs(x))) break;
  }
  return x;
}

namespace {

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) = 1 - P(a, x), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double fpmin = std::numeric_limits<double>::min() / 1e-30;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || !std::isfinite(a)) {
    throw NumericalDegeneracy("regularized_gamma_p: invalid arguments");
  }
  if (x == 0.0) return 0.0;
  if (!std::isfinite(x)) return 1.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double chi_square_cdf(double x, double df) {
  if (!(df > 0.0)) throw NumericalDegeneracy("chi_square_cdf: df must be > 0");
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(0.5 * df, 0.5 * x);
}

double log_factorial(double y) {
  if (y < 0.0) throw NonCountData("log_factorial: negative argument");
  return std::lgamma(y + 1.0);
}

double Rng::uniform() {
  // 53 random bits -> [0, 1). Exact and portable for a given seed.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  have_spare_ = true;
  return u * m;
}

double Rng::normal(double mean, double sd) { return mean + sd * normal(); }

long Rng::poisson_knuth(double mu) {
  const double limit = std::exp(-mu);
  long k = 0;
  double prod = uniform();
  while (prod > limit) {
    ++k;
    prod *= uniform();
  }
  return k;
}

long Rng::poisson(double mu) {
  if (!(mu >= 0.0)) throw OverflowGuard("poisson: rate is not a finite non-negative number");
  if (mu > 1e6) throw OverflowGuard("poisson: rate exceeds 1e6, recursion diverged");
  // Poisson(mu) == sum of independent Poisson pieces; keeps exp(-mu) away
  // from underflow while staying an exact sampler.
  long total = 0;
  while (mu > 30.0) {
    total += poisson_knuth(30.0);
    mu -= 30.0;
  }
  if (mu > 0.0) total += poisson_knuth(mu);
  return total;
}

}  // namespace tsfit::num
