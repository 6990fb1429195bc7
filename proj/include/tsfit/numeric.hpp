#ifndef TSFIT_NUMERIC_HPP
#define TSFIT_NUMERIC_HPP

#include <cstdint>
#include <random>

namespace tsfit::num {

// Standard normal CDF.
double normal_cdf(double x);

// Standard normal quantile for p in (0, 1). Newton refinement on the erfc-based
// CDF; accurate to machine precision over the usable range.
double normal_quantile(double p);

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

// Chi-square CDF with df > 0 degrees of freedom.
double chi_square_cdf(double x, double df);

// ln(y!) for non-negative y.
double log_factorial(double y);

// Deterministic random source. The engine (mt19937_64) is fully specified by
// the standard; the distribution transforms live here because the stdlib ones
// are implementation-defined, which is not good enough for the seeded
// bitwise-reproducibility contracts.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                 // [0, 1)
  double normal();                  // N(0, 1), Marsaglia polar
  double normal(double mean, double sd);
  long poisson(double mu);          // exact draw; throws OverflowGuard for huge mu

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
  long poisson_knuth(double mu);    // mu <= ~30
};

}  // namespace tsfit::num

#endif  // TSFIT_NUMERIC_HPP
