#ifndef TSFIT_CORRELOGRAM_HPP
#define TSFIT_CORRELOGRAM_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "tsfit/series.hpp"

namespace tsfit {

// Sample (partial) autocorrelations with the white-noise confidence band.
// For kind == acf, coefficients[k] is lag k (lag 0 == 1); for kind == pacf,
// coefficients[k] is lag k + 1.
struct Correlogram {
  enum class Kind { acf, pacf };
  Kind kind = Kind::acf;
  std::vector<double> coefficients;
  std::size_t n = 0;       // sample size
  double band = 0.0;       // 1.96 / sqrt(n)

  double at_lag(std::size_t lag) const;  // lag-indexed access
  std::size_t max_lag() const;
};

// Identification verdict: an abrupt stop after some lag, or gradual decay.
struct Pattern {
  enum class Kind { cut_off, dies_down };
  Kind kind = Kind::dies_down;
  std::size_t cut_lag = 0;  // meaningful for cut_off only

  std::string to_string() const;
};

// rho_k = sum_{t<n-k} (z_t - mean)(z_{t+k} - mean) / sum_t (z_t - mean)^2,
// k = 0..max_lag. The denominator runs over all n terms.
Correlogram acf(const TimeSeries& s, std::size_t max_lag);

// phi_kk via the Durbin-Levinson recursion, lags 1..max_lag.
Correlogram pacf(const TimeSeries& s, std::size_t max_lag);

// Cut-off when every lag beyond L sits inside the band and the drop past L is
// abrupt (the largest later coefficient is at most half of |c_L|); dies-down
// otherwise. All-inside-band classifies as cut_off(0).
Pattern classify_pattern(const Correlogram& c);

// min(floor(10*log10(n)), n-1): the usual plotting horizon.
std::size_t default_max_lag(std::size_t n);

}  // namespace tsfit

#endif  // TSFIT_CORRELOGRAM_HPP
