#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "hypeig/bessel.hpp"
#include "hypeig/common.hpp"
#include "hypeig/eigenvalue.hpp"
#include "hypeig/quadrature.hpp"

namespace hypeig {

/// Evaluated lower/upper bounds for one ball.  The Borisov-Freitas pair is
/// stated for kappa = 1 only; bf_defined flags availability.  cheng_upper is
/// the r -> infinity comparison value (n-1)^2 kappa^2 / 4 — it bounds the
/// eigenvalue of the whole space, not of the finite ball.
struct BoundSet {
  double mckean_lower = 0.0;
  double cheng_upper = 0.0;
  double bf_lower = 0.0;
  double bf_upper = 0.0;
  bool bf_defined = false;
  double savo_lower = 0.0;
  double savo_upper = 0.0;
};

enum class Parity { odd, even };

struct ExpansionCoeffs {
  Parity parity = Parity::odd;
  int l = 2;
  double c_l = 0.0;
  double harmonic_sum = 0.0;
};

/// Cached value of the integral over (0, inf) of s^2 / sinh^2(s); the tail
/// beyond s = 40 is below 1e-33 and is dropped.
inline double savo_integral() {
  static const double value = integrate_adaptive(
      [](double s) {
        if (s < 1e-8) return 1.0;
        const double sh = std::sinh(s);
        return s * s / (sh * sh);
      },
      0.0, 40.0, 1e-13);
  return value;
}

/// Large-radius expansion: McKean term plus (pi^2/r^2) [1 + correction]^2
/// with the parity-dependent harmonic bracket.  n = 3 is exact:
/// kappa^2 + pi^2/r^2.
inline double large_r_expansion(int n, double kappa, double r) {
  if (n < 2) throw ParameterError("large_r_expansion: n must be >= 2");
  const double mckean = 0.25 * (n - 1.0) * (n - 1.0) * kappa * kappa;
  if (n == 3) return kappa * kappa + kPi * kPi / (r * r);
  double bracket;
  if (n % 2 == 1) {
    const int l = (n - 1) / 2;
    double h = 0.0;
    for (int j = 1; j <= l - 1; ++j) h += 1.0 / j;
    bracket = 1.0 + h / r;
  } else {
    const int l = n / 2;
    double h = -kLn2;
    for (int j = 1; j <= 2 * l - 3; j += 2) h += 1.0 / j;
    if (l == 1) h = -kLn2;  // n = 2: the parenthesis reads as -ln 2
    bracket = 1.0 + 2.0 * h / r;
  }
  return mckean + kPi * kPi / (r * r) * bracket * bracket;
}

/// Small-radius expansion j_{n/2-1,1}^2 / r^2 + n(n-1) kappa^2 / 6.
inline double small_r_expansion(int n, double kappa, double r) {
  if (n < 2) throw ParameterError("small_r_expansion: n must be >= 2");
  const double j = bessel_first_zero(0.5 * n - 1.0);
  return j * j / (r * r) + n * (n - 1.0) / 6.0 * kappa * kappa;
}

/// All evaluable bounds for one ball spec.
inline BoundSet bounds(const BallSpec& spec) {
  spec.validate();
  const int n = spec.n;
  const double r = spec.r;
  BoundSet b;
  b.mckean_lower = 0.25 * (n - 1.0) * (n - 1.0) * spec.kappa * spec.kappa;
  b.cheng_upper = b.mckean_lower;
  b.bf_defined = std::abs(spec.kappa - 1.0) < 1e-12;
  if (b.bf_defined) {
    const double j = bessel_first_zero(0.5 * n - 1.0);
    const double sh = std::sinh(r);
    if (n == 2) {
      b.bf_lower = j * j / (r * r) + 0.25 * (1.0 / (r * r) - 1.0 / (sh * sh) + 1.0);
      b.bf_upper = j * j / (r * r) + 1.0 / 3.0;
    } else {
      b.bf_lower = j * j / (r * r) + n * (n - 1.0) / 6.0;
      b.bf_upper = j * j / (r * r) + 0.25 * (n - 1.0) * (n - 1.0) +
                   0.25 * (n - 1.0) * (n - 3.0) * (1.0 / (sh * sh) - 1.0 / (r * r));
    }
  } else {
    b.bf_lower = std::nan("");
    b.bf_upper = std::nan("");
  }
  const double c_savo = 0.5 * kPi * kPi * (n * n - 1.0) * savo_integral();
  b.savo_lower = b.mckean_lower + kPi * kPi / (r * r) - 4.0 * kPi * kPi / ((n - 1.0) * r * r * r);
  b.savo_upper = b.mckean_lower + kPi * kPi / (r * r) + c_savo / (r * r * r);
  return b;
}

/// The 1/r correction constant c_l of the large-radius root expansion,
/// computed two ways: the closed harmonic-sum formula and the P/Q (odd) or
/// p/q (even) recurrences; both must agree to 1e-12 relative.
inline ExpansionCoeffs recurrence_constants(Parity parity, int l) {
  ExpansionCoeffs out;
  out.parity = parity;
  out.l = l;
  if (parity == Parity::odd) {
    if (l < 2 || l > 170) throw ParameterError("recurrence_constants: odd parity needs 2 <= l <= 170");
    double h = 0.0;
    for (int j = 1; j <= l - 1; ++j) h += 1.0 / j;
    out.harmonic_sum = h;
    const double closed = kPi * h;
    // recurrences: Q_{k+1}(0) = -k Q_k(0) with Q_1(0) = 1;
    // P_{k+1}'(0) = Q_k(0) - k P_k'(0) with P_1' = 0
    double Q0 = 1.0, Pp = 0.0;
    for (int k = 1; k < l; ++k) {
      const double Pp_next = Q0 - k * Pp;
      Q0 = -k * Q0;
      Pp = Pp_next;
    }
    const double via_rec = -kPi * Pp / Q0;
    if (std::abs(via_rec - closed) > 1e-12 * std::abs(closed))
      throw NumericalError("recurrence_constants: routes disagree", via_rec);
    out.c_l = closed;
  } else {
    if (l < 1 || l > 170) throw ParameterError("recurrence_constants: even parity needs 1 <= l <= 170");
    double h = -kLn2;
    for (int j = 1; j <= 2 * l - 3; j += 2) h += 1.0 / j;
    out.harmonic_sum = (l == 1) ? -kLn2 : h;
    const double closed = (l == 1) ? -2.0 * kPi * kLn2 : 2.0 * kPi * h;
    // limits q_k(0): q_1 = pi, q_{k+1}(0) = (1/2 - k) q_k(0)
    //   (equivalently (-1)^{k-1} pi (2k-3)!!/2^{k-1});
    // p_{k+1}'(0) = q_k(0) + (1/2 - k) p_k'(0) with p_1'(0) = 2 pi ln 2
    double q0 = kPi, pp = 2.0 * kPi * kLn2;
    for (int k = 1; k < l; ++k) {
      const double pp_next = q0 + (0.5 - k) * pp;
      q0 = (0.5 - k) * q0;
      pp = pp_next;
    }
    const double via_rec = -kPi * pp / q0;
    if (std::abs(via_rec - closed) > 1e-12 * std::abs(closed))
      throw NumericalError("recurrence_constants: routes disagree", via_rec);
    out.c_l = closed;
  }
  return out;
}

/// Residual sequence r_i^s (alpha(r_i) - pi/r_i) for a trial exponent s; the
/// s = 2 sequence tends to c_l, s < 2 drifts to zero, s > 2 diverges.
inline std::vector<double> expansion_residual_sequence(int n, double s,
                                                       std::span<const double> r_grid) {
  std::vector<double> out;
  out.reserve(r_grid.size());
  for (double r : r_grid) {
    const auto e = eigen(BallSpec{n, 1.0, r});
    out.push_back(std::pow(r, s) * (e.alpha - kPi / r));
  }
  return out;
}

/// Fit the expansion constant from exact roots on an increasing grid
/// (min >= 20, at least 4 points) by Richardson extrapolation in 1/r of
/// phi(r) = r^2 (alpha(r) - pi/r).
inline double fit_expansion_constant(int n, std::span<const double> r_grid) {
  if (r_grid.size() < 4) throw ParameterError("fit_expansion_constant: need at least 4 radii");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (r_grid[i] < 20.0) throw ParameterError("fit_expansion_constant: radii must be >= 20");
    if (i > 0 && r_grid[i] <= r_grid[i - 1])
      throw ParameterError("fit_expansion_constant: grid must be increasing");
  }
  std::vector<double> h(r_grid.size()), phi(r_grid.size());
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    const auto e = eigen(BallSpec{n, 1.0, r_grid[i]});
    h[i] = 1.0 / r_grid[i];
    phi[i] = r_grid[i] * r_grid[i] * (e.alpha - kPi / r_grid[i]);
  }
  // Neville tableau evaluated at h = 0
  std::vector<double> t = phi;
  for (std::size_t level = 1; level < t.size(); ++level) {
    for (std::size_t i = 0; i + level < t.size(); ++i) {
      const double denom = h[i] - h[i + level];
      if (std::abs(denom) < 1e-14 * std::abs(h[i]))
        throw NumericalError("fit_expansion_constant: ill-conditioned grid", t[i]);
      t[i] = (0.0 - h[i + level]) * t[i] / denom + (h[i] - 0.0) * t[i + 1] / denom;
    }
  }
  const double fitted = t[0];
  if (!std::isfinite(fitted) || std::abs(fitted - phi.back()) > 10.0 * (std::abs(phi.back()) + 1.0))
    throw NumericalError("fit_expansion_constant: extrapolation unstable", fitted);
  return fitted;
}

}  // namespace hypeig
