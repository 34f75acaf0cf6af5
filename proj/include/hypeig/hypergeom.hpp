#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <type_traits>

#include "hypeig/common.hpp"
#include "hypeig/ode.hpp"

namespace hypeig {

/// Parameter triple (a, b; c) of the Gaussian hypergeometric function.
/// When a_im > 0 the second parameter is implicitly the conjugate
/// a_re - i*a_im and the function is real on the real axis; when a_im == 0
/// the second parameter is the independent real value b_re.
struct HypergeomParams {
  double a_re = 0.0;
  double a_im = 0.0;  // >= 0
  double b_re = 0.0;  // used only when a_im == 0
  double c = 1.0;

  static HypergeomParams conjugate_pair(double re, double im, double c) {
    if (im < 0.0) throw ParameterError("HypergeomParams: a_im must be >= 0");
    return {re, im, 0.0, c};
  }
  static HypergeomParams real_pair(double a, double b, double c) { return {a, 0.0, b, c}; }

  bool is_conjugate() const { return a_im > 0.0; }
  std::complex<double> a() const { return {a_re, a_im}; }
  std::complex<double> b() const {
    return is_conjugate() ? std::complex<double>{a_re, -a_im} : std::complex<double>{b_re, 0.0};
  }
  double sum_ab() const { return is_conjugate() ? 2.0 * a_re : a_re + b_re; }
  double prod_ab() const { return is_conjugate() ? a_re * a_re + a_im * a_im : a_re * b_re; }

  void validate() const {
    if (c <= 0.0 && std::abs(c - std::round(c)) < 1e-12)
      throw ParameterError("HypergeomParams: c must not be zero or a negative integer");
  }
};

enum class Hyp2f1Strategy { series, pfaff_series, ode_continuation };

struct EvalReport {
  double value = 0.0;
  double est_error = 0.0;
  Hyp2f1Strategy strategy = Hyp2f1Strategy::series;
  long terms_or_steps = 0;
};

namespace detail {

inline constexpr double kSeriesTol = 1e-16;
inline constexpr long kSeriesCap = 1000000;

// Maclaurin sum with the two-consecutive-small-terms stopping rule.
// TermRatio(k) must return t_{k+1} / t_k.
template <class Scalar>
struct RawSeries {
  Scalar sum;
  double est_error;
  long terms;
  double abs_sum;  // sum of |t_k|, the internal cancellation scale
};

template <class Scalar, class TermRatio>
RawSeries<Scalar> sum_series(TermRatio&& ratio, double tail_q) {
  Scalar term = Scalar(1);
  Scalar sum = term;
  double abs_sum = 1.0;
  bool prev_small = false;
  for (long k = 0; k < kSeriesCap; ++k) {
    term *= ratio(k);
    sum += term;
    const double at = std::abs(term);
    abs_sum += at;
    const bool small = at <= kSeriesTol * std::abs(sum);
    if (small && prev_small) {
      double q = std::min(std::abs(tail_q), 0.999);
      // truncation tail plus the accumulated roundoff floor
      return {sum, at * q / (1.0 - q) + 2.3e-16 * abs_sum, k + 1, abs_sum};
    }
    prev_small = small;
  }
  double partial;
  if constexpr (std::is_same_v<Scalar, double>)
    partial = sum;
  else
    partial = sum.real();
  throw NumericalError("eval_2f1: series did not converge within term cap", partial);
}

// Direct series for conjugate-pair parameters: every term is real and
// positive factors (a_re+k)^2 + a_im^2 keep the arithmetic purely real.
inline EvalReport series_conjugate(const HypergeomParams& p, double z) {
  auto r = sum_series<double>(
      [&](long k) {
        const double num = (p.a_re + k) * (p.a_re + k) + p.a_im * p.a_im;
        return num * z / ((p.c + k) * (k + 1.0));
      },
      z);
  return {r.sum, r.est_error, Hyp2f1Strategy::series, r.terms};
}

inline EvalReport series_real(double a, double b, double c, double z) {
  // terminating (polynomial) case: one of a, b a non-positive integer
  auto is_nonpos_int = [](double v) {
    return v <= 1e-12 && std::abs(v - std::round(v)) < 1e-12;
  };
  if (is_nonpos_int(a) || is_nonpos_int(b)) {
    const long kmax = (long)std::round(-(is_nonpos_int(b) ? b : a));
    double term = 1.0, sum = 1.0;
    for (long k = 0; k < kmax; ++k) {
      term *= (a + k) * (b + k) * z / ((c + k) * (k + 1.0));
      sum += term;
    }
    return {sum, 1e-16 * std::abs(sum), Hyp2f1Strategy::series, kmax};
  }
  auto r = sum_series<double>(
      [&](long k) { return (a + k) * (b + k) * z / ((c + k) * (k + 1.0)); }, z);
  return {r.sum, r.est_error, Hyp2f1Strategy::series, r.terms};
}

inline RawSeries<std::complex<double>> series_complex(std::complex<double> a,
                                                       std::complex<double> b, double c,
                                                       double z) {
  return sum_series<std::complex<double>>(
      [&](long k) {
        return (a + std::complex<double>(double(k))) * (b + std::complex<double>(double(k))) * z /
               ((c + k) * (k + 1.0));
      },
      z);
}

// Pfaff transformation F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)) for z < 0.
inline EvalReport pfaff(const HypergeomParams& p, double z) {
  const double w = z / (z - 1.0);
  const std::complex<double> a = p.a();
  const std::complex<double> cb = std::complex<double>(p.c, 0.0) - p.b();
  auto s = series_complex(a, cb, p.c, w);
  const double L = std::log1p(-z);  // log(1-z), exact for z<0
  const std::complex<double> pref = std::exp(-a * L);
  const std::complex<double> total = pref * s.sum;
  // roundoff lives at the scale of the accumulated term magnitudes
  const double scale = std::abs(pref) * s.abs_sum;
  if (std::abs(total.imag()) > 1e-12 * (scale + 1e-300))
    throw NumericalError("eval_2f1: imaginary residue above tolerance", total.real());
  return {total.real(), std::abs(pref) * s.est_error + std::abs(total.imag()),
          Hyp2f1Strategy::pfaff_series, s.terms};
}

// Hypergeometric ODE continuation in the variable x with z = -sinh^2(x/2).
// Under that substitution the ODE reads W'' + P(x) W' + ab W = 0 with
// P(x) = 2c/sinh(x) + (a+b+1) tanh(x/2) - coth(x); a+b and ab are real for
// every parameter family used here.  The integrated variable V = e^{beta x} W
// removes the common exponential decay so both fundamental solutions stay O(1).
inline EvalReport ode_continuation(const HypergeomParams& p, double z) {
  const double x_target = 2.0 * std::asinh(std::sqrt(-z));
  const double w_anchor = 0.95;
  const double z_anchor = w_anchor / (w_anchor - 1.0);  // = -19
  const double x_anchor = 2.0 * std::asinh(std::sqrt(-z_anchor));

  EvalReport f0 = pfaff(p, z_anchor);
  HypergeomParams up = p;  // parameters shifted by one for the derivative
  up.a_re += 1.0;
  if (!p.is_conjugate()) up.b_re += 1.0;
  up.c += 1.0;
  EvalReport f0p = pfaff(up, z_anchor);
  const double sum_ab = p.sum_ab();
  const double prod_ab = p.prod_ab();
  const double dFdz = prod_ab / p.c * f0p.value;
  const double dzdx = -0.5 * std::sinh(x_anchor);

  const double beta = p.is_conjugate() ? p.a_re : std::min(p.a_re, p.b_re);
  auto Pcoef = [&](double x) {
    return 2.0 * p.c / std::sinh(x) + (sum_ab + 1.0) * std::tanh(0.5 * x) - 1.0 / std::tanh(x);
  };

  using Solver = Dopri5<2>;
  Solver::Options opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;
  long steps = 0;
  Solver solver(
      [&](double x, const Solver::State& v, Solver::State& dv) {
        const double P = Pcoef(x);
        dv[0] = v[1];
        dv[1] = -(P - 2.0 * beta) * v[1] - (beta * beta - P * beta + prod_ab) * v[0];
      },
      opt);
  const double e0 = std::exp(beta * x_anchor);
  Solver::State v0{f0.value * e0, (dFdz * dzdx + beta * f0.value) * e0};
  auto vend = solver.integrate(
      x_anchor, v0, x_target,
      [&](double, double, const Solver::State&, const Solver::StepInterpolant&) {
        ++steps;
        return true;
      });
  const double value = vend[0] * std::exp(-beta * x_target);
  const double est =
      (f0.est_error / std::max(std::abs(f0.value), 1e-300) + 1e-12 * std::sqrt((double)steps + 1.0)) *
          std::abs(value) +
      1e-300;
  return {value, est, Hyp2f1Strategy::ode_continuation, steps};
}

}  // namespace detail

/// 2F1(a, b; c; z) for z <= 0 (z > 0 admitted only in the terminating
/// polynomial case).  Strategy: direct series on (-1, 0]; Pfaff-transformed
/// series for z <= -1; ODE continuation from a well-converged anchor once the
/// transformed argument exceeds 0.95.
inline EvalReport eval_2f1(const HypergeomParams& params, double z) {
  params.validate();
  if (z == 0.0) return {1.0, 0.0, Hyp2f1Strategy::series, 0};
  if (z > 0.0) {
    if (!params.is_conjugate()) {
      auto is_nonpos_int = [](double v) {
        return v <= 1e-12 && std::abs(v - std::round(v)) < 1e-12;
      };
      if (is_nonpos_int(params.a_re) || is_nonpos_int(params.b_re))
        return detail::series_real(params.a_re, params.b_re, params.c, z);
    }
    throw PreconditionError("eval_2f1: z must be <= 0 (except terminating polynomials)");
  }
  if (z > -1.0) {
    return params.is_conjugate() ? detail::series_conjugate(params, z)
                                 : detail::series_real(params.a_re, params.b_re, params.c, z);
  }
  const double w = z / (z - 1.0);
  if (w <= 0.95) return detail::pfaff(params, z);
  return detail::ode_continuation(params, z);
}

/// Evaluate with a forced strategy (used by consistency tests).
inline EvalReport eval_2f1_with(const HypergeomParams& params, double z, Hyp2f1Strategy s) {
  params.validate();
  switch (s) {
    case Hyp2f1Strategy::series:
      return params.is_conjugate() ? detail::series_conjugate(params, z)
                                   : detail::series_real(params.a_re, params.b_re, params.c, z);
    case Hyp2f1Strategy::pfaff_series:
      return detail::pfaff(params, z);
    case Hyp2f1Strategy::ode_continuation:
      return detail::ode_continuation(params, z);
  }
  throw ParameterError("eval_2f1_with: unknown strategy");
}

/// d/dz 2F1(a,b;c;z) = (ab/c) 2F1(a+1, b+1; c+1; z).
inline double eval_2f1_derivative(const HypergeomParams& params, double z) {
  params.validate();
  HypergeomParams up = params;
  up.a_re += 1.0;
  if (!params.is_conjugate()) up.b_re += 1.0;
  up.c += 1.0;
  return params.prod_ab() / params.c * eval_2f1(up, z).value;
}

/// Continued-fraction value of R_n(rho) / (R_{n+2}(rho) sinh(kappa rho)) for
/// the conjugate-pair family with lambda > (n-1)^2 kappa^2 / 4:
///   (2/n) T(t),  T(t) = x_0 t - y_1/(x_1 t - y_2/(x_2 t - ...)),
/// t = coth(kappa rho), x_l = (n+2l)/2, y_l = (l^2 + l(n-1) + lambda/kappa^2)/4,
/// evaluated by the modified Lentz method.  The 2/n prefactor normalizes
/// T(t) ~ x_0 t to the quotient's rho -> 0 blowup 1/sinh(kappa rho).
inline double ratio_cf(int n, double kappa, double lambda, double rho) {
  if (n < 2) throw ParameterError("ratio_cf: n must be >= 2");
  if (kappa <= 0.0 || rho <= 0.0) throw ParameterError("ratio_cf: kappa and rho must be positive");
  const double lam_k2 = lambda / (kappa * kappa);
  if (!(lam_k2 > 0.25 * (n - 1.0) * (n - 1.0)))
    throw ParameterError("ratio_cf: lambda must exceed the McKean threshold");
  const double t = 1.0 / std::tanh(kappa * rho);
  const double tiny = 1e-300;
  auto xcoef = [&](long l) { return 0.5 * (n + 2.0 * l); };
  auto ycoef = [&](long l) { return 0.25 * (l * (double)l + l * (n - 1.0) + lam_k2); };

  double f = xcoef(0) * t;
  if (f == 0.0) f = tiny;
  double C = f, D = 0.0;
  for (long j = 1; j <= 400000; ++j) {
    const double aj = -ycoef(j);
    const double bj = xcoef(j) * t;
    D = bj + aj * D;
    if (D == 0.0) D = tiny;
    C = bj + aj / C;
    if (C == 0.0) C = tiny;
    D = 1.0 / D;
    const double delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-14) return f * 2.0 / n;
  }
  throw NumericalError("ratio_cf: continued fraction did not converge", f);
}

}  // namespace hypeig
