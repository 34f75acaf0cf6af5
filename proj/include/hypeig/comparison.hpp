#pragma once

#include <cmath>
#include <functional>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hypeig/common.hpp"
#include "hypeig/eigenvalue.hpp"
#include "hypeig/hypergeom.hpp"
#include "hypeig/quadrature.hpp"

namespace hypeig {

/// Integral over [0, r] summed over doubling segments [0,1],[1,2],[2,4],...
/// so adaptive panels cannot miss mass concentrated near the origin when r is
/// large.
template <class F>
double integrate_radial(F&& f, double r, double rtol = 1e-11, double atol = 1e-300) {
  if (r <= 0.0) return 0.0;
  double total = 0.0;
  double lo = 0.0, width = std::min(1.0, r);
  int segments = 0;
  while (lo < r) {
    ++segments;
    lo = std::min(lo + width, r);
    width *= 2.0;
  }
  lo = 0.0;
  width = std::min(1.0, r);
  while (lo < r) {
    double hi = std::min(lo + width, r);
    total += integrate_adaptive(f, lo, hi, rtol, atol / segments);
    lo = hi;
    width *= 2.0;
  }
  return total;
}

/// Hyperbolic ball volume V_rho^kappa = n omega_n int_0^rho (sinh(kappa t)/kappa)^{n-1} dt.
inline double hyperbolic_ball_volume(int n, double kappa, double rho) {
  const double c = n * unit_ball_volume(n);
  return integrate_radial(
      [n, kappa](double t) { return std::pow(std::sinh(kappa * t) / kappa, n - 1); }, rho, 1e-12) *
      c;
}

/// A radial metric-measure model given by its metric-sphere area density
/// rho -> A^mu_rho.  Closed-form registry entries or a sampled table; tables
/// interpolate the ball volume by a monotone cubic Hermite whose knot slopes
/// are the sampled densities, and differentiate it for off-knot densities.
class RadialMeasure {
 public:
  enum class Kind { hyperbolic, euclidean, funk, tabulated };

  static RadialMeasure hyperbolic_model(int n, double kappa) {
    RadialMeasure m(Kind::hyperbolic, n, "hyperbolic(n=" + std::to_string(n) + ")");
    if (!(kappa > 0.0)) throw ParameterError("RadialMeasure: kappa must be positive");
    m.kappa_ = kappa;
    return m;
  }
  static RadialMeasure euclidean_model(int n) {
    return RadialMeasure(Kind::euclidean, n, "euclidean(n=" + std::to_string(n) + ")");
  }
  static RadialMeasure funk_model(int n) {
    return RadialMeasure(Kind::funk, n, "funk(n=" + std::to_string(n) + ")");
  }

  static RadialMeasure tabulated(int n, std::vector<double> rho, std::vector<double> area,
                                 std::string label = "tabulated") {
    RadialMeasure m(Kind::tabulated, n, std::move(label));
    if (rho.size() != area.size() || rho.size() < 3)
      throw ParameterError("RadialMeasure: table needs >= 3 matching samples");
    for (std::size_t i = 0; i < rho.size(); ++i) {
      if (i > 0 && rho[i] <= rho[i - 1])
        throw ParameterError("RadialMeasure: table abscissae must be strictly increasing");
      if (!(area[i] > 0.0) || !(rho[i] > 0.0))
        throw ParameterError("RadialMeasure: table entries must be positive");
    }
    m.rho_ = std::move(rho);
    m.area_ = std::move(area);
    m.build_volume_knots();
    return m;
  }

  /// Two-column CSV (rho, area) with one header line, comma separated.
  static RadialMeasure from_csv(std::istream& in, int n, std::string label = "csv") {
    std::string line;
    if (!std::getline(in, line)) throw ParameterError("measure CSV: missing header line");
    std::vector<double> rho, area;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ls(line);
      double r, a;
      if (!(ls >> r >> a)) throw ParameterError("measure CSV: malformed row '" + line + "'");
      rho.push_back(r);
      area.push_back(a);
    }
    return tabulated(n, std::move(rho), std::move(area), std::move(label));
  }

  Kind kind() const { return kind_; }
  int dim() const { return n_; }
  const std::string& label() const { return label_; }
  double table_min() const { return rho_.empty() ? 0.0 : rho_.front(); }
  double table_max() const { return rho_.empty() ? 0.0 : rho_.back(); }
  /// first knot past the interpolation boundary layer at the table head
  double table_interior_min() const {
    return rho_.size() > 2 ? rho_[2] : (rho_.empty() ? 0.0 : rho_.front());
  }

  /// A^mu_rho
  double density(double rho) const {
    const double c = n_ * unit_ball_volume(n_);
    switch (kind_) {
      case Kind::hyperbolic:
        return c * std::pow(std::sinh(kappa_ * rho) / kappa_, n_ - 1);
      case Kind::euclidean:
        return c * std::pow(rho, n_ - 1);
      case Kind::funk:
        return c * std::pow(-std::expm1(-rho), n_ - 1) * std::exp(-rho);
      case Kind::tabulated:
        if (rho < rho_.front())  // power-law closure below the first knot
          return area_.front() * std::pow(rho / rho_.front(), n_ - 1);
        return hermite_derivative(rho);
    }
    return 0.0;
  }

  /// mu(B_rho)
  double ball_volume(double rho) const {
    const double w = unit_ball_volume(n_);
    switch (kind_) {
      case Kind::hyperbolic:
        return hyperbolic_ball_volume(n_, kappa_, rho);
      case Kind::euclidean:
        return w * std::pow(rho, n_);
      case Kind::funk:
        return w * std::pow(-std::expm1(-rho), n_);
      case Kind::tabulated:
        if (rho < rho_.front()) return vol_.front() * std::pow(rho / rho_.front(), n_);
        return hermite_value(rho);
    }
    return 0.0;
  }

 private:
  RadialMeasure(Kind k, int n, std::string label) : kind_(k), n_(n), label_(std::move(label)) {
    if (n < 2) throw ParameterError("RadialMeasure: n must be >= 2");
  }

  void build_volume_knots() {
    // mu below the first knot is closed by the local density normalization
    // A ~ c rho^{n-1}: mu(rho_0) ~ A(rho_0) rho_0 / n.  Increments integrate
    // A = rho^{n-1} g(rho) with g taken linear on each interval, which is
    // exact in the power-law factor and so stays accurate down to rho ~ 0.
    const std::size_t m = rho_.size();
    vol_.resize(m);
    vol_[0] = area_[0] * rho_[0] / n_;
    auto powint = [&](double a, double b, int p) {  // integral of rho^p over [a, b]
      return (std::pow(b, p + 1) - std::pow(a, p + 1)) / (p + 1);
    };
    for (std::size_t i = 1; i < m; ++i) {
      const double a = rho_[i - 1], b = rho_[i], h = b - a;
      const double g0 = area_[i - 1] / std::pow(a, n_ - 1);
      const double g1 = area_[i] / std::pow(b, n_ - 1);
      const double lin = (g1 - g0) / h;
      vol_[i] = vol_[i - 1] + g0 * powint(a, b, n_ - 1) +
                lin * (powint(a, b, n_) - a * powint(a, b, n_ - 1));
    }
  }

  std::size_t segment(double rho) const {
    if (rho > rho_.back())
      throw ParameterError("RadialMeasure: abscissa beyond the tabulated range");
    std::size_t i = std::upper_bound(rho_.begin(), rho_.end(), rho) - rho_.begin();
    if (i == 0) return 0;
    if (i >= rho_.size()) return rho_.size() - 2;
    return i - 1;
  }

  void hermite_coeffs(std::size_t i, double& h, double& m0, double& m1) const {
    h = rho_[i + 1] - rho_[i];
    const double delta = (vol_[i + 1] - vol_[i]) / h;
    // slopes are the sampled densities, limited to keep mu monotone
    m0 = std::min(area_[i], 3.0 * delta);
    m1 = std::min(area_[i + 1], 3.0 * delta);
  }

  double hermite_value(double rho) const {
    const std::size_t i = segment(rho);
    double h, m0, m1;
    hermite_coeffs(i, h, m0, m1);
    const double t = (rho - rho_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return vol_[i] * (2 * t3 - 3 * t2 + 1) + h * m0 * (t3 - 2 * t2 + t) +
           vol_[i + 1] * (-2 * t3 + 3 * t2) + h * m1 * (t3 - t2);
  }

  double hermite_derivative(double rho) const {
    const std::size_t i = segment(rho);
    double h, m0, m1;
    hermite_coeffs(i, h, m0, m1);
    const double t = (rho - rho_[i]) / h;
    const double t2 = t * t;
    return (vol_[i] * (6 * t2 - 6 * t) + h * m0 * (3 * t2 - 4 * t + 1) +
            vol_[i + 1] * (-6 * t2 + 6 * t) + h * m1 * (3 * t2 - 2 * t)) /
           h;
  }

  Kind kind_;
  int n_;
  std::string label_;
  double kappa_ = 1.0;
  std::vector<double> rho_, area_, vol_;
};

/// Verdicts for the local-density and Bishop-Gromov hypotheses.
/// density_ok is empty when the table does not reach small radii.
struct HypothesisReport {
  std::optional<bool> density_ok;
  double density_limit = std::nan("");
  bool bg_ok = false;
  double bg_violation = 0.0;  // maximal relative upward move of A/sinh^{n-1}
  double kappa = 0.0;
};

/// Layer-cake integral: integral over B_r of f(d(x0,x)) dmu equals the radial
/// integral of A^mu_rho f(rho).  BV integrands are admitted directly (the
/// split into monotone parts is linear and changes nothing numerically).
template <class F>
double layer_cake(const RadialMeasure& measure, F&& f, double r, double rtol = 1e-11) {
  if (!(r > 0.0)) throw ParameterError("layer_cake: r must be positive");
  const double lo = measure.kind() == RadialMeasure::Kind::tabulated
                        ? std::max(0.0, measure.table_min())
                        : 0.0;
  const double hi = measure.kind() == RadialMeasure::Kind::tabulated
                        ? std::min(r, measure.table_max())
                        : r;
  auto integrand = [&](double rho) {
    return rho <= 0.0 ? 0.0 : measure.density(rho) * f(rho);
  };
  double total = 0.0;
  double a = lo, width = std::min(1.0, hi - lo);
  while (a < hi) {
    double b = std::min(a + width, hi);
    total += integrate_adaptive(integrand, a, b, rtol, 1e-300);
    a = b;
    width *= 2.0;
  }
  return total;
}

/// Check the local-density limit at rho in {1e-2, 1e-3, 1e-4} (extrapolated
/// in rho^2) and scan Bishop-Gromov monotonicity on a 1000-point grid.
inline HypothesisReport check_hypotheses(const RadialMeasure& measure, double kappa, double r) {
  if (!(kappa > 0.0 && r > 0.0)) throw ParameterError("check_hypotheses: kappa, r must be positive");
  HypothesisReport rep;
  rep.kappa = kappa;
  const int n = measure.dim();
  const double nwn = n * unit_ball_volume(n);

  const bool table = measure.kind() == RadialMeasure::Kind::tabulated;
  if (table && measure.table_min() > 1e-4) {
    rep.density_ok = std::nullopt;  // the probe set reaches rho = 1e-4
  } else {
    auto q = [&](double rho) { return measure.density(rho) / (nwn * std::pow(rho, n - 1)); };
    // quadratic extrapolation of the probes at rho = 1e-2, 1e-3, 1e-4 to 0
    double x[3] = {1e-2, 1e-3, 1e-4};
    double v[3] = {q(x[0]), q(x[1]), q(x[2])};
    for (int level = 1; level < 3; ++level)
      for (int i = 0; i + level < 3; ++i)
        v[i] = (x[i] * v[i + 1] - x[i + level] * v[i]) / (x[i] - x[i + level]);
    rep.density_limit = v[0];
    rep.density_ok = std::abs(v[0] - 1.0) <= 1e-6;
  }

  const double lo = table ? measure.table_interior_min() : r / 1000.0;
  const double hi = table ? std::min(r, measure.table_max()) : r;
  const int grid = 1000;
  double prev = std::nan("");
  for (int i = 0; i <= grid; ++i) {
    const double rho = lo + (hi - lo) * i / grid;
    if (rho <= 0.0) continue;
    const double s = measure.density(rho) / std::pow(std::sinh(kappa * rho), n - 1);
    if (i > 0 && std::isfinite(prev) && s > prev)
      rep.bg_violation = std::max(rep.bg_violation, (s - prev) / std::abs(prev));
    prev = s;
  }
  rep.bg_ok = rep.bg_violation <= 1e-9;
  return rep;
}

/// The transplanted boundary machinery for one ball: the two hypergeometric
/// profiles R_n, R_{n+2}, the sign function H, and the Psi defect of a
/// measure.
class TransplantSet {
 public:
  explicit TransplantSet(const BallSpec& spec) : spec_(spec) {
    spec.validate();
    auto e = eigen(spec);
    lambda_ = e.lambda;
    gamma_ = e.alpha / spec.kappa;
  }

  const BallSpec& spec() const { return spec_; }
  double lambda() const { return lambda_; }

  double R(int theta, double rho) const {
    if (rho == 0.0) return 1.0;
    const double sh = std::sinh(0.5 * spec_.kappa * rho);
    return eval_2f1(HypergeomParams::conjugate_pair(0.5 * (theta - 1.0), gamma_, 0.5 * theta),
                    -sh * sh)
        .value;
  }
  double Rn(double rho) const { return R(spec_.n, rho); }
  double Rnp2(double rho) const { return R(spec_.n + 2, rho); }

  /// H(rho) = lambda R_{n+2}^2 sinh^2(kappa rho) - kappa^2 n^2 R_n^2.
  double H(double rho) const {
    const double rs = Rnp2(rho) * std::sinh(spec_.kappa * rho);
    const double rn = Rn(rho);
    const double kn = spec_.kappa * spec_.n;
    return lambda_ * rs * rs - kn * kn * rn * rn;
  }

  /// Psi(rho) = 1 - kappa^{n-1}/(n omega_n) A^mu_rho / sinh^{n-1}(kappa rho).
  /// The measure is captured by value so the evaluator owns its data.
  std::function<double(double)> psi(RadialMeasure measure) const {
    const int n = spec_.n;
    const double kappa = spec_.kappa;
    const double scale = std::pow(kappa, n - 1) / (n * unit_ball_volume(n));
    return [measure = std::move(measure), n, kappa, scale](double rho) {
      return 1.0 - scale * measure.density(rho) / std::pow(std::sinh(kappa * rho), n - 1);
    };
  }

 private:
  BallSpec spec_;
  double lambda_;
  double gamma_;
};

/// The unique zero of H on (0, r): H < 0 before it, H > 0 after it.
inline double find_rho0(const TransplantSet& t) {
  const double r = t.spec().r;
  const double scale = std::pow(t.spec().kappa * t.spec().n, 2);
  auto h = [&](double rho) { return t.H(rho); };
  if (!(h(1e-8 * r) < 0.0 && h(r) > 0.0))
    throw NumericalError("find_rho0: H endpoints do not straddle zero");
  double rho0 = refine_root(h, Bracket{1e-8 * r, r}, 1e-12);
  if (std::abs(h(rho0)) > 1e-10 * scale)
    throw NumericalError("find_rho0: residual above tolerance", rho0);
  return rho0;
}

/// Outcome of the two-route comparison of a radial measure with the
/// hyperbolic model ball.
struct ComparisonReport {
  double lambda_model = 0.0;     // lambda_1 of B_r^kappa
  double rayleigh_upper = 0.0;   // Rayleigh quotient of the transplanted profile
  bool inequality_ok = false;    // rayleigh_upper <= lambda_model (tolerated)
  double rigidity_gap = 0.0;     // max over grid of |mu(B_rho) - V_rho^kappa|
  double rho0 = 0.0;             // sign change of H
};

/// Transplant the hyperbolic extremal profile into the measure and certify
/// the eigenvalue comparison.
inline ComparisonReport compare(const RadialMeasure& measure, const BallSpec& spec,
                                double quad_rtol = 1e-10) {
  spec.validate();
  auto hyp = check_hypotheses(measure, spec.kappa, spec.r);
  if (hyp.density_ok.has_value() && !*hyp.density_ok)
    throw PreconditionError("compare: local density hypothesis fails for " + measure.label());
  if (!hyp.bg_ok)
    throw PreconditionError("compare: Bishop-Gromov monotonicity fails for " + measure.label());

  TransplantSet t(spec);
  const double kappa = spec.kappa;
  const int n = spec.n;
  const double lambda = t.lambda();

  const double r_hi = measure.kind() == RadialMeasure::Kind::tabulated
                          ? std::min(spec.r, measure.table_max())
                          : spec.r;
  auto I1 = integrate_radial(
      [&](double rho) {
        const double v = t.Rn(rho);
        return v * v * measure.density(rho);
      },
      r_hi, quad_rtol);
  auto I2 = integrate_radial(
      [&](double rho) {
        const double v = t.Rnp2(rho) * std::sinh(kappa * rho);
        return v * v * measure.density(rho);
      },
      r_hi, quad_rtol);

  ComparisonReport rep;
  rep.lambda_model = lambda;
  rep.rayleigh_upper = lambda * lambda / (kappa * kappa * n * n) * I2 / I1;
  rep.inequality_ok = rep.rayleigh_upper <= lambda * (1.0 + 1e-8);
  rep.rho0 = find_rho0(t);

  const double grid_lo = measure.kind() == RadialMeasure::Kind::tabulated
                             ? measure.table_min()
                             : spec.r / 100.0;
  for (int i = 0; i <= 100; ++i) {
    const double rho = grid_lo + (r_hi - grid_lo) * i / 100.0;
    if (rho <= 0.0) continue;
    rep.rigidity_gap = std::max(
        rep.rigidity_gap, std::abs(measure.ball_volume(rho) - hyperbolic_ball_volume(n, kappa, rho)));
  }
  return rep;
}

}  // namespace hypeig
