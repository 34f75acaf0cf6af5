#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypeig/common.hpp"
#include "hypeig/comparison.hpp"
#include "hypeig/eigenvalue.hpp"
#include "hypeig/quadrature.hpp"
#include "hypeig/roots.hpp"

namespace hypeig {

/// Flag curvature of the Funk unit ball (documentation constant).
inline constexpr double kFunkFlagCurvature = -0.25;

/// Weighted N-Ricci curvature of unit vectors on the Funk ball:
/// -(n-1)/4 - (n+1)^2/(4(N-n)) for N in (n, inf), -(n-1)/4 at N = inf,
/// -inf at N = n (documentation constant).
inline double funk_weighted_ricci(int n, double N) {
  if (N < n) throw ParameterError("funk_weighted_ricci: N must be >= n");
  if (N == (double)n) return -std::numeric_limits<double>::infinity();
  if (std::isinf(N)) return -(n - 1.0) / 4.0;
  return -(n - 1.0) / 4.0 - (n + 1.0) * (n + 1.0) / (4.0 * (N - n));
}

namespace detail {
inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }
}  // namespace detail

/// A point of the open unit ball; construction enforces |x| < 1 strictly.
struct FunkPoint {
  std::vector<double> x;
  explicit FunkPoint(std::vector<double> coords) : x(std::move(coords)) {
    if (!(detail::dot(x, x) < 1.0)) throw ParameterError("FunkPoint: |x| must be < 1");
  }
  operator std::span<const double>() const { return x; }
};

/// Funk metric F(x,y) on the open unit ball; positively 1-homogeneous in y,
/// non-reversible.  The radicand is assembled as |y|^2(1-|x|^2) + <x,y>^2,
/// which is nonnegative by construction.
inline double funk_metric(std::span<const double> x, std::span<const double> y) {
  const double x2 = detail::dot(x, x);
  if (!(x2 < 1.0)) throw ParameterError("funk_metric: |x| must be < 1");
  const double y2 = detail::dot(y, y);
  const double xy = detail::dot(x, y);
  const double om = 1.0 - x2;
  return (std::sqrt(y2 * om + xy * xy) + xy) / om;
}

/// Funk co-metric (polar transform): F*(x, xi) = |xi| - <x, xi>.
inline double funk_cometric(std::span<const double> x, std::span<const double> xi) {
  if (!(detail::dot(x, x) < 1.0)) throw ParameterError("funk_cometric: |x| must be < 1");
  return detail::norm(xi) - detail::dot(x, xi);
}

/// Discretized polar-transform oracle sup_v xi(v)/F(x,v).  The maximizer lies
/// in span{x, xi}: a component orthogonal to both raises F without changing
/// xi(v), so the search reduces to one angle, scanned then golden-sectioned.
inline double funk_cometric_sup(std::span<const double> x, std::span<const double> xi,
                                int coarse = 2048) {
  const std::size_t n = x.size();
  std::vector<double> e1(n, 0.0), e2(n, 0.0);
  const double nx = detail::norm(x);
  if (nx > 1e-14) {
    for (std::size_t i = 0; i < n; ++i) e1[i] = x[i] / nx;
  } else {
    e1[0] = 1.0;
  }
  std::vector<double> xi_perp(xi.begin(), xi.end());
  const double proj = detail::dot(xi_perp, e1);
  for (std::size_t i = 0; i < n; ++i) xi_perp[i] -= proj * e1[i];
  const double np = detail::norm(xi_perp);
  if (np > 1e-14) {
    for (std::size_t i = 0; i < n; ++i) e2[i] = xi_perp[i] / np;
  } else {
    e2[n > 1 ? 1 : 0] = (n > 1) ? 1.0 : 0.0;
  }
  std::vector<double> v(n);
  auto value = [&](double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    for (std::size_t i = 0; i < n; ++i) v[i] = c * e1[i] + s * e2[i];
    const double F = funk_metric(x, v);
    return F > 0.0 ? detail::dot(xi, v) / F : -1e300;
  };
  double best_theta = 0.0, best = -1e300;
  for (int i = 0; i < coarse; ++i) {
    const double th = 2.0 * kPi * i / coarse;
    const double val = value(th);
    if (val > best) best = val, best_theta = th;
  }
  // golden-section refinement around the best coarse angle
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = best_theta - 2.0 * kPi / coarse, b = best_theta + 2.0 * kPi / coarse;
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = value(c1), f2 = value(c2);
  for (int i = 0; i < 80; ++i) {
    if (f1 < f2) {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + gr * (b - a);
      f2 = value(c2);
    } else {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - gr * (b - a);
      f1 = value(c1);
    }
  }
  return std::max(f1, f2);
}

/// Funk quasimetric distance between interior points.
inline double funk_distance(std::span<const double> x1, std::span<const double> x2) {
  if (!(detail::dot(x1, x1) < 1.0 && detail::dot(x2, x2) < 1.0))
    throw ParameterError("funk_distance: points must be interior");
  std::vector<double> d(x1.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = x2[i] - x1[i];
  const double dd = detail::dot(d, d);
  if (dd == 0.0) return 0.0;
  const double x1x2 = detail::dot(x1, x2);
  const double disc = dd - (detail::dot(x1, x1) * detail::dot(x2, x2) - x1x2 * x1x2);
  const double root = std::sqrt(std::max(disc, 0.0));
  return std::log((root - detail::dot(x1, d)) / (root - detail::dot(x2, d)));
}

/// Klein distance: the symmetrization of the Funk distance.
inline double klein_distance(std::span<const double> x1, std::span<const double> x2) {
  return 0.5 * (funk_distance(x1, x2) + funk_distance(x2, x1));
}

struct RayleighSample {
  double parameter = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  double quotient = 0.0;
};

/// Rayleigh data of the Funk profile u_alpha(x) = -(1-|x|)^alpha:
/// numerator alpha^2 n omega_n B(2 alpha + 1, n), denominator the same Beta
/// expression, quotient exactly alpha^2.  The Beta value is cross-checked by
/// radial quadrature to 1e-8.
inline RayleighSample funk_rayleigh(int n, double alpha) {
  if (!(alpha > 0.0)) throw ParameterError("funk_rayleigh: alpha must be positive");
  if (n < 2) throw ParameterError("funk_rayleigh: n must be >= 2");
  const double nwn = n * unit_ball_volume(n);
  const double beta =
      std::exp(std::lgamma(2.0 * alpha + 1.0) + std::lgamma((double)n) - std::lgamma(2.0 * alpha + 1.0 + n));
  // radial integral n omega_n int_0^1 t^{n-1}(1-t)^{2 alpha} dt via t = 1-e^{-v}
  const double quad = integrate_to_infinity(
      [&](double v) {
        const double t = -std::expm1(-v);
        return std::pow(t, n - 1) * std::exp(-(2.0 * alpha + 1.0) * v);
      },
      0.0, 1e-11);
  if (std::abs(quad - beta) > 1e-8 * beta)
    throw NumericalError("funk_rayleigh: quadrature disagrees with the Beta closed form", quad);
  RayleighSample s;
  s.parameter = alpha;
  s.denominator = nwn * beta;
  s.numerator = alpha * alpha * s.denominator;
  s.quotient = alpha * alpha;
  return s;
}

/// Rayleigh data of the Klein profile w_gamma(x) = e^{-gamma d_K(0,x)}.
/// Both integrals are finite iff gamma > (n-1)/2; quotient is gamma^2.
inline RayleighSample klein_rayleigh(int n, double gamma) {
  if (n < 2) throw ParameterError("klein_rayleigh: n must be >= 2");
  if (!(gamma > 0.5 * (n - 1.0)))
    throw DivergenceError("klein_rayleigh: integrals diverge for gamma <= (n-1)/2");
  const double nwn = n * unit_ball_volume(n);
  const double eps = gamma - 0.5 * (n - 1.0);
  // n omega_n int_0^1 (1-t)^{gamma-(n+1)/2}(1+t)^{-gamma-(n+1)/2} t^{n-1} dt,
  // integrated in v = -ln(1-t) where the integrand decays like e^{-eps v}
  const double I = nwn * integrate_to_infinity(
                             [&](double v) {
                               const double emv = std::exp(-v);
                               const double t = -std::expm1(-v);
                               return std::exp(-eps * v) *
                                      std::pow(2.0 - emv, -gamma - 0.5 * (n + 1.0)) *
                                      std::pow(t, n - 1);
                             },
                             0.0, 1e-11);
  RayleighSample s;
  s.parameter = gamma;
  s.denominator = I;
  s.numerator = gamma * gamma * I;
  s.quotient = gamma * gamma;
  return s;
}

/// Shell decay witness for the reversed-gradient energy
/// int F*^2(x, -Du_alpha) dv_F = alpha^2 int (1+|x|)^2 (1-|x|)^{2 alpha-2} dx:
/// partial integrals over |x| in [1-2^-k, 1-2^-k-1] must decay geometrically
/// for convergence; for alpha <= 1/2 they do not.
struct ShellDecayReport {
  bool diverges = false;
  std::vector<double> shells;
};

inline ShellDecayReport funk_reversed_energy_shells(int n, double alpha, int kmax = 40) {
  if (!(alpha > 0.0)) throw ParameterError("funk_reversed_energy_shells: alpha > 0 required");
  ShellDecayReport rep;
  const double nwn = n * unit_ball_volume(n);
  for (int k = 0; k <= kmax; ++k) {
    const double lo = 1.0 - std::pow(2.0, -k);
    const double hi = 1.0 - std::pow(2.0, -k - 1);
    const double s = alpha * alpha * nwn *
                     integrate_adaptive(
                         [&](double t) {
                           return std::pow(t, n - 1) * (1.0 + t) * (1.0 + t) *
                                  std::pow(1.0 - t, 2.0 * alpha - 2.0);
                         },
                         lo, hi, 1e-10);
    rep.shells.push_back(s);
  }
  int non_decaying = 0, checked = 0;
  for (std::size_t k = rep.shells.size() - 10; k + 1 < rep.shells.size(); ++k) {
    ++checked;
    if (rep.shells[k + 1] >= 0.95 * rep.shells[k]) ++non_decaying;
  }
  rep.diverges = non_decaying >= checked - 1;
  return rep;
}

namespace detail {

// Parameters of the Funk radial profile's hypergeometric factor.
struct FunkProfileParams {
  double A, B, v;  // v = sqrt(1 - 4 lambda)
};

inline FunkProfileParams funk_profile_params(int n, double lambda) {
  const double u = std::sqrt(n * (double)n - 4.0 * lambda);
  const double v = std::sqrt(1.0 - 4.0 * lambda);
  return {0.5 * ((n - 1.0) + u - v), 0.5 * ((n - 1.0) - u - v), v};
}

// 2F1(A, B; n-1; s) for s in (0,1) by the direct series with compensated
// accumulation: past the first term every term has one sign (B in (-1,0)),
// so the only cancellation is the final crossing through zero.
inline double funk_profile_series(int n, double lambda, double s) {
  const auto p = funk_profile_params(n, lambda);
  KahanSum sum;
  double term = 1.0;
  sum.add(term);
  const long cap = 4000000;
  for (long k = 0; k < cap; ++k) {
    term *= (p.A + k) * (p.B + k) * s / (((n - 1.0) + k) * (k + 1.0));
    sum.add(term);
    if (std::abs(term) <= 1e-15 * std::abs(sum.value()) && k > 4) return sum.value();
  }
  throw NumericalError("funk_profile_series: series cap exceeded (s too close to 1)",
                       sum.value());
}

}  // namespace detail

/// Closed-form radial Funk eigenprofile f(s) = -(1-s)^{-(1+v)/2} 2F1(A,B;n-1;s),
/// the non-singular solution with f(0) = -1 (valid for lambda < 1/4).
inline double funk_profile_closed(int n, double lambda, double s) {
  if (!(lambda > 0.0 && lambda < 0.25))
    throw ParameterError("funk_profile_closed: lambda must lie in (0, 1/4)");
  const auto p = detail::funk_profile_params(n, lambda);
  return -std::pow(1.0 - s, -0.5 * (1.0 + p.v)) * detail::funk_profile_series(n, lambda, s);
}

/// Smallest lambda_rho in (0, 1/4) whose radial profile vanishes at s = rho,
/// i.e. the smallest root of 2F1(A,B;n-1;rho) in lambda; empty when even
/// lambda -> 1/4 keeps the profile's zero beyond rho.
inline std::optional<double> funk_lambda_rho(int n, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw ParameterError("funk_lambda_rho: rho must be in (0,1)");
  if (n < 2) throw ParameterError("funk_lambda_rho: n must be >= 2");
  auto h = [&](double lam) { return detail::funk_profile_series(n, lam, rho); };
  const double lo = 1e-9, hi = 0.25 - 1e-12;
  // h(0+) = 1 - rho > 0; scan for the first sign change
  const int grid = 256;
  double prev_l = lo, prev_h = h(lo);
  for (int i = 1; i <= grid; ++i) {
    const double lam = lo + (hi - lo) * i / grid;
    const double val = h(lam);
    if (val == 0.0 || std::signbit(val) != std::signbit(prev_h))
      return refine_root(h, Bracket{prev_l, lam}, 1e-12);
    prev_l = lam;
    prev_h = val;
  }
  return std::nullopt;
}

/// Certified upper bounds on the Funk fundamental frequency by three routes.
struct FunkFrequencyReport {
  double bound = std::nan("");
  std::string tightest_route;
  double rayleigh_route = std::nan("");
  double comparison_route = std::nan("");
  double laplace_route = std::nan("");   // NaN when no admissible lambda_rho root
  bool comparison_inequalities_ok = false;
};

/// Upper-bound the fundamental frequency of the Funk ball by (a) the Rayleigh
/// quotient of u_alpha at small alpha, (b) the measure-comparison route with
/// kappa descending over {1, 0.5, 0.1, 0.01} at hyperbolic radius r = R/kappa
/// (the model eigenvalue is then kappa^2 lambda(n,1,R), linear in kappa^2
/// through zero, and the kappa^2 -> 0 intercept is extrapolated), and (c) the
/// radial Finsler-Laplace eigenvalue lambda_rho as rho increases toward 1.
inline FunkFrequencyReport funk_fundamental_frequency(int n) {
  if (n < 2) throw ParameterError("funk_fundamental_frequency: n must be >= 2");
  FunkFrequencyReport rep;
  rep.rayleigh_route = funk_rayleigh(n, 1e-3).quotient;

  const double R = 20.0;
  const auto measure = RadialMeasure::funk_model(n);
  std::vector<double> k2s, lams;
  rep.comparison_inequalities_ok = true;
  for (double kappa : {1.0, 0.5, 0.1, 0.01}) {
    BallSpec spec{n, kappa, R / kappa};
    auto c = compare(measure, spec, 1e-9);
    rep.comparison_inequalities_ok = rep.comparison_inequalities_ok && c.inequality_ok;
    k2s.push_back(kappa * kappa);
    lams.push_back(c.lambda_model);
  }
  // least-squares line lambda = I + S kappa^2; Savo-type limit keeps I >= 0
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = (double)k2s.size();
  for (std::size_t i = 0; i < k2s.size(); ++i) {
    sx += k2s[i];
    sy += lams[i];
    sxx += k2s[i] * k2s[i];
    sxy += k2s[i] * lams[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  rep.comparison_route = std::max(0.0, (sy - slope * sx) / m);

  for (double rho : {0.99, 0.999, 0.9995}) {
    if (auto lam = funk_lambda_rho(n, rho)) rep.laplace_route = *lam;
  }

  rep.bound = rep.rayleigh_route;
  rep.tightest_route = "rayleigh";
  if (rep.comparison_route < rep.bound) {
    rep.bound = rep.comparison_route;
    rep.tightest_route = "comparison";
  }
  if (std::isfinite(rep.laplace_route) && rep.laplace_route < rep.bound) {
    rep.bound = rep.laplace_route;
    rep.tightest_route = "laplace";
  }
  return rep;
}

/// Klein-model contrast: the same Rayleigh driver on the Klein ball, whose
/// quotient infimum over admissible gamma is (n-1)^2/4.
inline double klein_fundamental_frequency(int n) {
  const double gamma = 0.5 * (n - 1.0) + 1e-4;
  return klein_rayleigh(n, gamma).quotient;
}

}  // namespace hypeig
