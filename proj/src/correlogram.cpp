#include "tsfit/correlogram.hpp"

#include <cmath>
#include <numeric>

#include "tsfit/errors.hpp"
#include "tsfit/levinson.hpp"

namespace tsfit {

double Correlogram::at_lag(std::size_t lag) const {
  const std::size_t idx = (kind == Kind::acf) ? lag : lag - 1;
  if ((kind == Kind::pacf && lag == 0) || idx >= coefficients.size()) {
    throw IndexOutOfRange("correlogram holds no coefficient for lag " + std::to_string(lag));
  }
  return coefficients[idx];
}

std::size_t Correlogram::max_lag() const {
  return kind == Kind::acf ? coefficients.size() - 1 : coefficients.size();
}

std::string Pattern::to_string() const {
  if (kind == Kind::dies_down) return "dies_down";
  return "cut_off(" + std::to_string(cut_lag) + ")";
}

namespace {

void check_acf_inputs(const TimeSeries& s, std::size_t max_lag) {
  if (s.size() < 2) throw SeriesTooShort("correlogram needs at least two observations");
  if (max_lag >= s.size()) {
    throw LagTooLarge("max lag " + std::to_string(max_lag) + " must be below the sample size " +
                      std::to_string(s.size()));
  }
}

}  // namespace

Correlogram acf(const TimeSeries& s, std::size_t max_lag) {
  check_acf_inputs(s, max_lag);
  const std::size_t n = s.size();
  const double mean =
      std::accumulate(s.values.begin(), s.values.end(), 0.0) / static_cast<double>(n);

  double denom = 0.0;
  for (double v : s.values) denom += (v - mean) * (v - mean);
  if (denom == 0.0) throw ConstantSeries("autocorrelation of a constant series is undefined");

  Correlogram c;
  c.kind = Correlogram::Kind::acf;
  c.n = n;
  c.band = 1.96 / std::sqrt(static_cast<double>(n));
  c.coefficients.resize(max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    double num = 0.0;
    for (std::size_t t = 0; t + k < n; ++t) {
      num += (s.values[t] - mean) * (s.values[t + k] - mean);
    }
    c.coefficients[k] = num / denom;
  }
  c.coefficients[0] = 1.0;  // exact by definition
  return c;
}

Correlogram pacf(const TimeSeries& s, std::size_t max_lag) {
  if (max_lag < 1) throw LagTooLarge("pacf needs max lag >= 1");
  Correlogram rho = acf(s, max_lag);

  Correlogram c;
  c.kind = Correlogram::Kind::pacf;
  c.n = rho.n;
  c.band = rho.band;
  c.coefficients =
      lev::partial_from_acf(std::span<const double>(rho.coefficients).subspan(1));
  return c;
}

Pattern classify_pattern(const Correlogram& c) {
  const std::size_t first_lag = 1;
  const std::size_t last_lag = c.max_lag();

  std::size_t last_out = 0;
  for (std::size_t lag = first_lag; lag <= last_lag; ++lag) {
    if (std::abs(c.at_lag(lag)) > c.band) last_out = lag;
  }
  if (last_out == 0) return Pattern{Pattern::Kind::cut_off, 0};
  if (last_out == last_lag) return Pattern{Pattern::Kind::dies_down, 0};

  double tail_max = 0.0;
  for (std::size_t lag = last_out + 1; lag <= last_lag; ++lag) {
    tail_max = std::max(tail_max, std::abs(c.at_lag(lag)));
  }
  if (tail_max <= 0.5 * std::abs(c.at_lag(last_out))) {
    return Pattern{Pattern::Kind::cut_off, last_out};
  }
  return Pattern{Pattern::Kind::dies_down, 0};
}

std::size_t default_max_lag(std::size_t n) {
  const auto by_log = static_cast<std::size_t>(std::floor(10.0 * std::log10(static_cast<double>(n))));
  return std::min(by_log, n - 1);
}

}  // namespace tsfit
