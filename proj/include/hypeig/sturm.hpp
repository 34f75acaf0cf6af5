#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "hypeig/common.hpp"
#include "hypeig/ode.hpp"

namespace hypeig {

enum class RadialKind { hyperbolic_ball, funk_ball };

struct RadialODESpec {
  RadialKind kind = RadialKind::hyperbolic_ball;
  int n = 2;
  double C_osc = 0.0;      // hyperbolic case
  double lambda_rho = 0.0; // Funk case
};

struct ShootResult {
  std::optional<double> first_zero;
  std::vector<std::pair<double, double>> samples;  // (abscissa, f)
  bool oscillatory_within_domain = false;
  int zero_count = 0;
};

/// Right endpoint cap: the coefficients blow up at 1, the domain is [0,1) open.
inline constexpr double kRadialDomainCap = 1.0 - 1e-6;

namespace detail {

inline constexpr double kSeedAbscissa = 1e-6;

// Shared shooting driver for a first-order system (u, v) with u the profile.
template <class Rhs>
ShootResult shoot_profile(Rhs&& rhs, double s0, std::array<double, 2> y0, double s_end,
                          bool collect_samples) {
  using Solver = Dopri5<2>;
  Solver::Options opt;
  opt.rtol = 1e-10;
  opt.atol = 1e-12;
  Solver solver(std::forward<Rhs>(rhs), opt);

  ShootResult result;
  if (collect_samples) result.samples.push_back({s0, y0[0]});
  double u_prev = y0[0];
  solver.integrate(s0, y0, s_end,
                   [&](double, double t_new, const Solver::State& y,
                       const Solver::StepInterpolant& in) {
                     if (collect_samples) result.samples.push_back({t_new, y[0]});
                     if (y[0] == 0.0 || std::signbit(y[0]) != std::signbit(u_prev)) {
                       double zero = locate_zero<2>(in, 0, 1e-12);
                       if (!result.first_zero) result.first_zero = zero;
                       ++result.zero_count;
                     }
                     u_prev = y[0];
                     return true;
                   });
  result.oscillatory_within_domain = result.zero_count >= 1;
  return result;
}

inline ShootResult shoot_hyperbolic_impl(int n, double C, double rho_end, bool samples) {
  if (n < 2) throw ParameterError("shoot_hyperbolic: n must be >= 2");
  if (C <= 0.0) throw ParameterError("shoot_hyperbolic: C_osc must be positive");
  auto P = [n](double r) { return std::pow(r, n - 1) * std::pow(1.0 - r * r, 2.0 - n); };
  auto rhs = [n, C, &P](double r, const std::array<double, 2>& y, std::array<double, 2>& dy) {
    const double om = 1.0 - r * r;
    dy[0] = y[1] / (std::pow(r, n - 1) * std::pow(om, 2.0 - n));
    dy[1] = -C * std::pow(r, n - 1) * std::pow(om, -(double)n) * y[0];
  };
  const double s0 = kSeedAbscissa;
  // Frobenius seed from the regular series f = 1 - C/(2n) rho^2 + O(rho^4)
  const double f0 = 1.0 - C / (2.0 * n) * s0 * s0;
  const double fp0 = -C / (double)n * s0;
  std::array<double, 2> y0{f0, P(s0) * fp0};
  return shoot_profile(rhs, s0, y0, rho_end, samples);
}

inline ShootResult shoot_funk_impl(int n, double lam, double s_end, bool samples) {
  if (n < 2) throw ParameterError("shoot_funk: n must be >= 2");
  if (!(lam > 0.0 && lam < 0.25))
    throw ParameterError("shoot_funk: lambda_rho must lie in (0, 1/4)");
  auto rhs = [n, lam](double s, const std::array<double, 2>& y, std::array<double, 2>& dy) {
    const double om = 1.0 - s;
    dy[0] = y[1] / (om * om);
    dy[1] = -(n - 1.0) * y[1] / s - lam * y[0];
  };
  const double s0 = kSeedAbscissa;
  // regular branch: f(s) = -1 + lam/(2n) s^2 + O(s^4), fixed by f(0) = -1
  const double f0 = -1.0 + lam / (2.0 * n) * s0 * s0;
  const double v0 = lam / (double)n * s0 * (1.0 - s0) * (1.0 - s0);
  std::array<double, 2> y0{f0, v0};
  return shoot_profile(rhs, s0, y0, s_end, samples);
}

/// Profile value at rho_end for the eigenvalue inversion (no sampling).
inline double hyperbolic_value_at(int n, double C, double rho_end) {
  if (n < 2) throw ParameterError("shoot_hyperbolic: n must be >= 2");
  auto rhs = [n, C](double r, const std::array<double, 2>& y, std::array<double, 2>& dy) {
    const double om = 1.0 - r * r;
    dy[0] = y[1] / (std::pow(r, n - 1) * std::pow(om, 2.0 - n));
    dy[1] = -C * std::pow(r, n - 1) * std::pow(om, -(double)n) * y[0];
  };
  const double s0 = kSeedAbscissa;
  const double f0 = 1.0 - C / (2.0 * n) * s0 * s0;
  const double fp0 = -C / (double)n * s0;
  std::array<double, 2> y0{f0, std::pow(s0, n - 1) * std::pow(1.0 - s0 * s0, 2.0 - n) * fp0};
  using Solver = Dopri5<2>;
  Solver::Options opt;
  opt.rtol = 1e-11;
  opt.atol = 1e-14;
  Solver solver(rhs, opt);
  return solver.integrate(s0, y0, rho_end)[0];
}

/// Value of the transformed equation t(t+1)w'' + n(t+1/2)w' + (C/4)w = 0 at
/// t_end, regular branch w(0) = 1; used by the variable-change consistency
/// check (t = rho^2/(1-rho^2)).
inline double transformed_value_at(int n, double C, double t_end) {
  auto rhs = [n, C](double t, const std::array<double, 2>& y, std::array<double, 2>& dy) {
    dy[0] = y[1];
    dy[1] = -(n * (t + 0.5) * y[1] + 0.25 * C * y[0]) / (t * (t + 1.0));
  };
  const double t0 = kSeedAbscissa;
  const double b = -C / (2.0 * n);
  const double c2 = (C / (2.0 * n)) * (n + 0.25 * C) / (n + 2.0);
  std::array<double, 2> y0{1.0 + b * t0 + c2 * t0 * t0, b + 2.0 * c2 * t0};
  using Solver = Dopri5<2>;
  Solver::Options opt;
  opt.rtol = 1e-11;
  opt.atol = 1e-14;
  Solver solver(rhs, opt);
  return solver.integrate(t0, y0, t_end)[0];
}

}  // namespace detail

/// Shooting solution of the radial hyperbolic-ball equation
///   (rho^{n-1}/(1-rho^2)^{n-2} f')' + C rho^{n-1}/(1-rho^2)^n f = 0
/// with f(0) = 1, on (0, min(rho_max, 1-1e-6)].
inline ShootResult shoot_hyperbolic(int n, double C_osc, double rho_max) {
  if (!(rho_max > 0.0 && rho_max < 1.0))
    throw ParameterError("shoot_hyperbolic: rho_max must lie in (0, 1)");
  const double rho_end = std::min(rho_max, kRadialDomainCap);
  return detail::shoot_hyperbolic_impl(n, C_osc, rho_end, true);
}

/// Shooting solution of the radial Funk-ball equation
///   (f'(s)(1-s)^2)' + f'(s)(1-s)^2 (n-1)/s + lambda_rho f(s) = 0
/// normalized to f(0) = -1 (profile with f <= 0, f' >= 0 before its zero).
inline ShootResult shoot_funk(int n, double lambda_rho, double rho_max) {
  if (!(rho_max > 0.0 && rho_max < 1.0))
    throw ParameterError("shoot_funk: rho_max must lie in (0, 1)");
  const double s_end = std::min(rho_max, kRadialDomainCap);
  return detail::shoot_funk_impl(n, lambda_rho, s_end, true);
}

/// Dispatch on the ODE kind; only the fields relevant to `kind` are read.
inline ShootResult shoot(const RadialODESpec& spec, double rho_max) {
  switch (spec.kind) {
    case RadialKind::hyperbolic_ball:
      return shoot_hyperbolic(spec.n, spec.C_osc, rho_max);
    case RadialKind::funk_ball:
      return shoot_funk(spec.n, spec.lambda_rho, rho_max);
  }
  throw ParameterError("shoot: unknown radial ODE kind");
}

/// Analytic oscillation criterion: the equation is oscillatory iff
/// C_osc > (n-1)^2.
inline bool is_oscillatory(int n, double C_osc) {
  if (n < 2 || C_osc <= 0.0) throw ParameterError("is_oscillatory: need n >= 2, C_osc > 0");
  return C_osc > (n - 1.0) * (n - 1.0);
}

/// Companion diagnostic: count zeros of the shooting solution on (0, 1-1e-6].
inline int oscillation_zero_count(int n, double C_osc) {
  return detail::shoot_hyperbolic_impl(n, C_osc, kRadialDomainCap, false).zero_count;
}

/// Shooting-based classification (at least one zero inside the capped domain).
/// Non-oscillatory equations have none; oscillatory ones with
/// C_osc - (n-1)^2 >= 0.5 place their first zero inside the cap.
inline bool oscillatory_by_shooting(int n, double C_osc) {
  return oscillation_zero_count(n, C_osc) >= 1;
}

}  // namespace hypeig
