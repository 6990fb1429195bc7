#ifndef TSFIT_LEVINSON_HPP
#define TSFIT_LEVINSON_HPP

#include <span>
#include <vector>

namespace tsfit::lev {

// Durbin-Levinson recursion on an autocorrelation sequence rho[1..k]
// (rho[0] == 1 implied, so rho.size() == k). Returns phi_kk for k = 1..k.
// Throws NumericalDegeneracy when a recursion denominator collapses.
std::vector<double> partial_from_acf(std::span<const double> rho);

// AR coefficients of order rho.size() solving the Yule-Walker equations,
// obtained from the same recursion.
std::vector<double> ar_from_acf(std::span<const double> rho);

// Expand partial autocorrelations (each in (-1, 1)) into AR coefficients of a
// polynomial 1 - a_1 z - ... - a_p z^p with all roots outside the unit circle.
std::vector<double> pacf_to_ar(std::span<const double> pacf);

// Inverse of pacf_to_ar. Throws NonStationaryParams when the coefficients do
// not correspond to partials inside (-1, 1).
std::vector<double> ar_to_pacf(std::span<const double> ar);

// True iff 1 - a_1 z - ... - a_p z^p has all roots strictly outside the unit
// circle (checked through the reverse recursion).
bool all_roots_outside(std::span<const double> ar);

}  // namespace tsfit::lev

#endif  // TSFIT_LEVINSON_HPP
