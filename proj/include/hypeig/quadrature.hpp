#pragma once

#include <cmath>
#include <vector>

#include "hypeig/common.hpp"

namespace hypeig {

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (QUADPACK QK15).
// Gauss nodes sit at indices 1, 3, 5 and the center.
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15_panel(F&& f, double a, double b, double& kronrod, double& err) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  double resk = 0.0, resg = 0.0;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kGK15Nodes[i];
    const double fv = f(c - dx) + f(c + dx);
    resk += kGK15WeightsK[i] * fv;
    if (i % 2 == 1) resg += kGK15WeightsG[i / 2] * fv;
  }
  const double fc = f(c);
  resk += kGK15WeightsK[7] * fc;
  resg += kGK15WeightsG[3] * fc;
  kronrod = resk * h;
  err = std::abs(resk - resg) * std::abs(h);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod 7-15 on [a, b]: splits the worst panel until the
/// summed |K15-G7| estimate meets rtol*|I| + atol.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double rtol = 1e-11,
                          double atol = 1e-300, int max_panels = 6000) {
  if (a == b) return 0.0;
  struct Panel {
    double a, b, val, err;
  };
  auto make_panel = [&](double pa, double pb) {
    double v, e;
    detail::gk15_panel(f, pa, pb, v, e);
    return Panel{pa, pb, v, e};
  };
  std::vector<Panel> panels;
  panels.reserve(256);
  panels.push_back(make_panel(a, b));
  for (int iter = 0; iter < max_panels; ++iter) {
    double total = 0.0, err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].val;
      err += panels[i].err;
      if (panels[i].err > panels[worst].err) worst = i;
    }
    if (!std::isfinite(total) || !std::isfinite(err))
      throw NumericalError("integrate_adaptive: non-integrable integrand", total);
    if (err <= rtol * std::abs(total) + atol) return total;
    Panel p = panels[worst];
    double mid = 0.5 * (p.a + p.b);
    if (!(mid > std::min(p.a, p.b) && mid < std::max(p.a, p.b))) {
      if (!(p.err <= 1e-6 * std::abs(total) + atol))
        throw NumericalError("integrate_adaptive: unresolvable singularity", total);
      return total;
    }
    panels[worst] = make_panel(p.a, mid);
    panels.push_back(make_panel(mid, p.b));
  }
  double total = 0.0, err = 0.0;
  for (const auto& p : panels) total += p.val, err += p.err;
  if (err > 1e-6 * std::abs(total) + atol)
    throw NumericalError("integrate_adaptive: panel budget exhausted", total);
  return total;
}

/// Integral over [a, inf) of an eventually-decaying integrand: sums adaptive
/// panels over [a, a+1], [a+1, a+2], [a+2, a+4], ... and stops once two
/// consecutive segments contribute below rtol * |total|.
template <class F>
double integrate_to_infinity(F&& f, double a, double rtol = 1e-11, int max_segments = 64) {
  double total = 0.0;
  double lo = a, width = 1.0;
  int quiet = 0;
  for (int s = 0; s < max_segments; ++s) {
    double hi = lo + width;
    double part = integrate_adaptive(f, lo, hi, rtol, 1e-300);
    total += part;
    if (std::abs(part) <= rtol * std::abs(total) + 1e-300) {
      if (++quiet >= 2) return total;
    } else {
      quiet = 0;
    }
    lo = hi;
    if (s >= 1) width *= 2.0;
  }
  throw NumericalError("integrate_to_infinity: tail did not settle", total);
}

}  // namespace hypeig
