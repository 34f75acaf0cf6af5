#pragma once

#include <cmath>

#include "hypeig/common.hpp"
#include "hypeig/roots.hpp"

namespace hypeig {

/// Bessel function of the first kind J_nu(x), nu >= 0, by the ascending series
///   J_nu(x) = sum_m (-1)^m (x/2)^{2m+nu} / (m! Gamma(m+nu+1)).
/// Adequate through the first zero for every order used here.
inline double bessel_j(double nu, double x) {
  if (nu < 0.0) throw ParameterError("bessel_j: nu must be >= 0");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double q = 0.5 * x;
  double term = std::exp(nu * std::log(q) - std::lgamma(nu + 1.0));
  KahanSum sum;
  sum.add(term);
  for (int m = 0; m < 400; ++m) {
    term *= -q * q / ((m + 1.0) * (m + 1.0 + nu));
    sum.add(term);
    if (std::abs(term) <= 1e-18 * (std::abs(sum.value()) + 1e-30) && m > x) break;
  }
  return sum.value();
}

/// First positive zero j_{nu,1}, nu >= 0, to 1e-10 relative by bracketing the
/// series evaluation.  J_nu is positive on (0, j_{nu,1}), so the first sign
/// change of a forward scan brackets it.
inline double bessel_first_zero(double nu) {
  if (nu < 0.0) throw ParameterError("bessel_first_zero: nu must be >= 0");
  auto f = [&](double x) { return bessel_j(nu, x); };
  // j_{nu,1} ~ nu + 1.8557 nu^{1/3} for large nu; start safely below that
  double x = std::max(0.5, nu + 0.5);
  double fx = f(x);
  const double step = 0.25;
  for (int i = 0; i < 4000 && fx > 0.0; ++i) {
    double xn = x + step;
    double fn = f(xn);
    if (fn <= 0.0) return refine_root(f, Bracket{x, xn}, 1e-12);
    x = xn;
    fx = fn;
  }
  if (fx <= 0.0) return refine_root(f, Bracket{x - step, x}, 1e-12);
  throw NumericalError("bessel_first_zero: no sign change found", x);
}

}  // namespace hypeig
