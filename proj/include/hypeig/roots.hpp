#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "hypeig/common.hpp"

namespace hypeig {

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Walk a geometric-then-linear grid from x0 and return the first bracket on
/// which f changes sign.  The geometric ramp doubles x until the step would
/// exceed dx, then the grid advances linearly with step dx up to xmax.
template <class F>
std::optional<Bracket> first_sign_change(F&& f, double x0, double dx, double xmax) {
  double x_prev = x0;
  double f_prev = f(x_prev);
  if (f_prev == 0.0) return Bracket{x_prev, x_prev};
  auto step_to = [&](double x) -> std::optional<Bracket> {
    double fx = f(x);
    if (fx == 0.0 || std::signbit(fx) != std::signbit(f_prev)) return Bracket{x_prev, x};
    x_prev = x;
    f_prev = fx;
    return std::nullopt;
  };
  double x = x0;
  while (x < dx && x * 2.0 <= xmax) {
    x *= 2.0;
    if (auto br = step_to(x)) return br;
  }
  while (x_prev < xmax) {
    x = std::min(x_prev + dx, xmax);
    if (auto br = step_to(x)) return br;
    if (x >= xmax) break;
  }
  return std::nullopt;
}

/// Plain bisection until the bracket width drops below xtol (absolute).
template <class F>
Bracket bisect_to_width(F&& f, Bracket br, double xtol, int max_iter = 200) {
  double flo = f(br.lo);
  if (flo == 0.0) return {br.lo, br.lo};
  for (int i = 0; i < max_iter && (br.hi - br.lo) > xtol; ++i) {
    double mid = 0.5 * (br.lo + br.hi);
    double fm = f(mid);
    if (fm == 0.0) return {mid, mid};
    if (std::signbit(fm) == std::signbit(flo)) {
      br.lo = mid;
      flo = fm;
    } else {
      br.hi = mid;
    }
  }
  return br;
}

/// Bracketed root refinement: bisection down to a coarse width, then secant
/// iterations finished inside the bracket.  Secant steps falling outside the
/// current bracket are replaced by bisection steps, so convergence is
/// guaranteed.  rtol is relative to the root location.
template <class F>
double refine_root(F&& f, Bracket br, double rtol, double coarse_width = 1e-6) {
  if (br.hi == br.lo) return br.lo;
  double scale = std::max(std::abs(br.lo), std::abs(br.hi));
  br = bisect_to_width(f, br, std::max(coarse_width, scale * 1e-3 * rtol));
  if (br.hi == br.lo) return br.lo;

  double a = br.lo, b = br.hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  double x = b, fx = fb;
  for (int i = 0; i < 100; ++i) {
    double denom = fb - fa;
    double cand = (denom != 0.0) ? (b - fb * (b - a) / denom) : 0.5 * (a + b);
    if (!(cand > a && cand < b)) cand = 0.5 * (a + b);
    fx = f(cand);
    x = cand;
    if (fx == 0.0) break;
    if (std::signbit(fx) == std::signbit(fa)) {
      a = cand;
      fa = fx;
    } else {
      b = cand;
      fb = fx;
    }
    if ((b - a) <= rtol * std::max(std::abs(a), std::abs(b)) + 1e-300) break;
  }
  return x;
}

}  // namespace hypeig
