#include "tsfit/levinson.hpp"

#include <cmath>

#include "tsfit/errors.hpp"

namespace tsfit::lev {

std::vector<double> partial_from_acf(std::span<const double> rho) {
  const std::size_t k_max = rho.size();
  std::vector<double> pacf(k_max, 0.0);
  if (k_max == 0) return pacf;

  std::vector<double> phi(k_max, 0.0), prev(k_max, 0.0);
  pacf[0] = rho[0];
  phi[0] = rho[0];
  for (std::size_t k = 2; k <= k_max; ++k) {
    prev = phi;
    double num = rho[k - 1];
    double den = 1.0;
    for (std::size_t j = 1; j < k; ++j) {
      num -= prev[j - 1] * rho[k - j - 1];
      den -= prev[j - 1] * rho[j - 1];
    }
    if (std::abs(den) < 1e-12) {
      throw NumericalDegeneracy("Durbin-Levinson denominator collapsed at lag " + std::to_string(k));
    }
    double kk = num / den;
    pacf[k - 1] = kk;
    for (std::size_t j = 1; j < k; ++j) phi[j - 1] = prev[j - 1] - kk * prev[k - j - 1];
    phi[k - 1] = kk;
  }
  return pacf;
}

std::vector<double> ar_from_acf(std::span<const double> rho) {
  std::vector<double> pacf = partial_from_acf(rho);
  return pacf_to_ar(pacf);
}

std::vector<double> pacf_to_ar(std::span<const double> pacf) {
  const std::size_t p = pacf.size();
  std::vector<double> phi(pacf.begin(), pacf.end());
  std::vector<double> work(p, 0.0);
  for (std::size_t k = 1; k < p; ++k) {
    for (std::size_t j = 0; j < k; ++j) work[j] = phi[j] - pacf[k] * phi[k - j - 1];
    for (std::size_t j = 0; j < k; ++j) phi[j] = work[j];
    phi[k] = pacf[k];
  }
  return phi;
}

std::vector<double> ar_to_pacf(std::span<const double> ar) {
  std::vector<double> phi(ar.begin(), ar.end());
  const std::size_t p = phi.size();
  std::vector<double> pacf(p, 0.0);
  std::vector<double> work(p, 0.0);
  for (std::size_t k = p; k >= 1; --k) {
    double a = phi[k - 1];
    if (std::abs(a) >= 1.0) {
      throw NonStationaryParams("AR polynomial has a root on or inside the unit circle");
    }
    pacf[k - 1] = a;
    double scale = 1.0 - a * a;
    for (std::size_t j = 0; j + 1 < k; ++j) {
      work[j] = (phi[j] + a * phi[k - j - 2]) / scale;
    }
    for (std::size_t j = 0; j + 1 < k; ++j) phi[j] = work[j];
  }
  return pacf;
}

bool all_roots_outside(std::span<const double> ar) {
  try {
    ar_to_pacf(ar);
  } catch (const NonStationaryParams&) {
    return false;
  }
  return true;
}

}  // namespace tsfit::lev
