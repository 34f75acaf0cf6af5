#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "hypeig/bessel.hpp"
#include "hypeig/common.hpp"
#include "hypeig/hypergeom.hpp"
#include "hypeig/roots.hpp"
#include "hypeig/sfuncs.hpp"
#include "hypeig/sturm.hpp"

namespace hypeig {

/// A hyperbolic geodesic ball: dimension n, curvature -kappa^2, radius r.
struct BallSpec {
  int n = 3;
  double kappa = 1.0;
  double r = 1.0;

  void validate() const {
    if (n < 2) throw ParameterError("BallSpec: n must be >= 2");
    if (!(kappa > 0.0)) throw ParameterError("BallSpec: kappa must be positive");
    if (!(r > 0.0)) throw ParameterError("BallSpec: r must be positive");
  }
};

enum class EigenMethod { hypergeom_root, s_recursion, ode_shooting };

inline const char* to_string(EigenMethod m) {
  switch (m) {
    case EigenMethod::hypergeom_root: return "hypergeom_root";
    case EigenMethod::s_recursion: return "s_recursion";
    case EigenMethod::ode_shooting: return "ode_shooting";
  }
  return "?";
}

/// First Dirichlet eigenvalue with its root alpha = sqrt(lambda - McKean),
/// the method that produced it, the boundary-function residual at the root,
/// and the bracket the root was isolated in (alpha units).
struct EigenResult {
  double lambda = 0.0;
  double alpha = 0.0;
  EigenMethod method = EigenMethod::hypergeom_root;
  double residual = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::string note;
};

namespace detail {

// First positive root in gamma = alpha/kappa of a boundary function given as
// objective(gamma).  The scan runs in theta = gamma * x: a short geometric
// ramp from 1e-4, then linear steps of pi/8 up to j_{nu,1} + 1 (consecutive
// zeros are at least ~pi apart in theta, so pi/8 cannot skip the first).
struct GammaRoot {
  double gamma;
  double residual;
  double gamma_lo, gamma_hi;
};

template <class F>
GammaRoot find_first_gamma_root(F&& objective, double x, double nu, double rtol) {
  const double theta_cap = bessel_first_zero(nu) + 1.0;
  auto g_of_theta = [&](double th) { return objective(th / x); };
  auto br = first_sign_change(g_of_theta, 1e-4, kPi / 8.0, theta_cap);
  if (!br)
    throw NumericalError("eigen: no sign change of the boundary function up to the Bessel cap");
  Bracket gb{br->lo / x, br->hi / x};
  double root = refine_root(objective, gb, rtol, (gb.hi - gb.lo) * 1e-4);
  return {root, objective(root), gb.lo, gb.hi};
}

inline double mckean_bound(const BallSpec& s) {
  return 0.25 * (s.n - 1.0) * (s.n - 1.0) * s.kappa * s.kappa;
}

inline EigenResult package(const BallSpec& s, const GammaRoot& g, EigenMethod m) {
  EigenResult res;
  res.alpha = s.kappa * g.gamma;
  res.lambda = mckean_bound(s) + res.alpha * res.alpha;
  res.method = m;
  res.residual = g.residual;
  res.bracket_lo = s.kappa * g.gamma_lo;
  res.bracket_hi = s.kappa * g.gamma_hi;
  if (s.r < 1e-3)
    res.note = "small-radius regime: root is O(1/r), compare with the Bessel expansion";
  return res;
}

// Scaled shooting of the geodesic-coordinate profile
//   W'' + (n-1) coth(x) W' + Lambda W = 0,  W(0) = 1,
// used when tanh(kappa r / 2) falls beyond the Poincare-coordinate domain cap.
// V = e^{beta x} W keeps both fundamental solutions O(1).
inline double geodesic_profile_value(int n, double Lambda, double x_end) {
  const double beta = 0.5 * (n - 1.0);
  using Solver = Dopri5<2>;
  Solver::Options opt;
  opt.rtol = 1e-11;
  opt.atol = 1e-14;
  Solver solver(
      [n, Lambda, beta](double x, const Solver::State& v, Solver::State& dv) {
        const double cm1 = 1.0 / std::tanh(x) - 1.0;
        dv[0] = v[1];
        dv[1] = -2.0 * beta * cm1 * v[1] - (Lambda - beta * beta - 2.0 * beta * beta * cm1) * v[0];
      },
      opt);
  const double x0 = 1e-6;
  const double W0 = 1.0 - Lambda / (2.0 * n) * x0 * x0;
  const double W0p = -Lambda / n * x0;
  Solver::State v0{W0 * std::exp(beta * x0), (W0p + beta * W0) * std::exp(beta * x0)};
  return solver.integrate(x0, v0, x_end)[0];
}

}  // namespace detail

/// Odd dimensions n = 2l+1: lambda = (n-1)^2 kappa^2/4 + alpha^2 where
/// alpha/kappa is the smallest positive root of S_l(alpha/kappa, kappa r).
inline EigenResult eigen_odd(const BallSpec& spec, double root_rtol = 1e-12) {
  spec.validate();
  if (spec.n % 2 == 0) throw ParameterError("eigen_odd: n must be odd");
  const int l = (spec.n - 1) / 2;
  if (l < 1 || l > kSMaxIndex)
    throw ParameterError("eigen_odd: unsupported dimension (l > 12), use eigen_hypergeom");
  const double x = spec.kappa * spec.r;
  auto objective = [&](double gamma) { return detail::s_numerator_scaled(l, gamma, x); };
  auto root = detail::find_first_gamma_root(objective, x, l - 0.5, root_rtol);
  return detail::package(spec, root, EigenMethod::s_recursion);
}

/// Any n >= 2: alpha/kappa is the smallest positive zero of
/// gamma -> 2F1((n-1)/2 +- i gamma; n/2; -sinh^2(kappa r/2)).
inline EigenResult eigen_hypergeom(const BallSpec& spec, double root_rtol = 1e-10) {
  spec.validate();
  const double x = spec.kappa * spec.r;
  const double sh = std::sinh(0.5 * x);
  const double z = -sh * sh;
  auto objective = [&](double gamma) {
    return eval_2f1(HypergeomParams::conjugate_pair(0.5 * (spec.n - 1.0), gamma, 0.5 * spec.n), z)
        .value;
  };
  auto root = detail::find_first_gamma_root(objective, x, 0.5 * spec.n - 1.0, root_rtol);
  return detail::package(spec, root, EigenMethod::hypergeom_root);
}

/// Independent ODE route: invert the radial shooting problem for the lambda
/// whose profile first vanishes at the ball boundary.  Uses the Poincare
/// coordinate rho_b = tanh(kappa r/2) while it stays inside the domain cap,
/// the geodesic coordinate beyond it.
inline EigenResult eigen_shooting(const BallSpec& spec, double root_rtol = 1e-10) {
  spec.validate();
  const int n = spec.n;
  const double x = spec.kappa * spec.r;
  const double rho_b = std::tanh(0.5 * x);
  const bool poincare = rho_b <= 1.0 - 2e-6;
  auto objective = [&](double gamma) {
    if (poincare) {
      const double C = (n - 1.0) * (n - 1.0) + 4.0 * gamma * gamma;
      return detail::hyperbolic_value_at(n, C, rho_b);
    }
    const double Lambda = 0.25 * (n - 1.0) * (n - 1.0) + gamma * gamma;
    return detail::geodesic_profile_value(n, Lambda, x);
  };
  auto root = detail::find_first_gamma_root(objective, x, 0.5 * n - 1.0, root_rtol);
  return detail::package(spec, root, EigenMethod::ode_shooting);
}

/// Dispatcher: odd dimensions through the S_l recursion (l <= 12), everything
/// else through the hypergeometric root; a forced method overrides.
inline EigenResult eigen(const BallSpec& spec, std::optional<EigenMethod> method = std::nullopt,
                         double root_rtol = 0.0) {
  spec.validate();
  EigenMethod m;
  if (method) {
    m = *method;
  } else {
    m = (spec.n % 2 == 1 && (spec.n - 1) / 2 <= kSMaxIndex) ? EigenMethod::s_recursion
                                                            : EigenMethod::hypergeom_root;
  }
  switch (m) {
    case EigenMethod::s_recursion:
      return eigen_odd(spec, root_rtol > 0.0 ? root_rtol : 1e-12);
    case EigenMethod::hypergeom_root:
      return eigen_hypergeom(spec, root_rtol > 0.0 ? root_rtol : 1e-10);
    case EigenMethod::ode_shooting:
      return eigen_shooting(spec, root_rtol > 0.0 ? root_rtol : 1e-10);
  }
  throw ParameterError("eigen: unknown method");
}

}  // namespace hypeig
