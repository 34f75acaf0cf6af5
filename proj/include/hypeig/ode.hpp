#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "hypeig/common.hpp"

namespace hypeig {

/// Embedded Dormand-Prince 5(4) pair with the classic quartic dense-output
/// interpolant.  Fixed small state dimension; FSAL; PI step control.
template <int N>
class Dopri5 {
 public:
  using State = std::array<double, N>;
  using Rhs = std::function<void(double, const State&, State&)>;

  struct Options {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_init = 0.0;   // 0 -> automatic
    double h_max = 0.0;    // 0 -> interval length
    long max_steps = 2000000;
  };

  /// Dense interpolant over one accepted step [t0, t0+h].
  struct StepInterpolant {
    double t0, h;
    State r1, r2, r3, r4, r5;
    State eval(double t) const {
      const double th = (t - t0) / h;
      const double th1 = 1.0 - th;
      State y;
      for (int i = 0; i < N; ++i)
        y[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
      return y;
    }
  };

  // Observer is called after each accepted step; return false to stop early.
  using Observer = std::function<bool(double t_old, double t_new, const State& y_new,
                                      const StepInterpolant& interp)>;

  Dopri5(Rhs rhs, Options opt = {}) : rhs_(std::move(rhs)), opt_(opt) {}

  State integrate(double t0, State y0, double t1, const Observer& obs = nullptr) {
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    double t = t0;
    State y = y0;
    State k1;
    rhs_(t, y, k1);
    double h = opt_.h_init > 0.0 ? opt_.h_init : initial_step(t, y, k1, dir, t1 - t0);
    const double hmax = opt_.h_max > 0.0 ? opt_.h_max : std::abs(t1 - t0);
    double err_prev = 1.0;
    for (long step = 0; step < opt_.max_steps; ++step) {
      if (dir * (t - t1) >= 0.0) return y;
      h = std::min(h, hmax);
      if (dir * (t + dir * h - t1) > 0.0) h = std::abs(t1 - t);
      if (h <= std::abs(t) * 1e-16 + 1e-300)
        throw NumericalError("dopri5: step size underflow at t=" + std::to_string(t));

      State k2, k3, k4, k5, k6, k7, ytmp, y5;
      const double hs = dir * h;
      auto stage = [&](double c, std::initializer_list<std::pair<const State*, double>> terms,
                       State& kout) {
        for (int i = 0; i < N; ++i) {
          double acc = y[i];
          for (auto& [kptr, a] : terms) acc += hs * a * (*kptr)[i];
          ytmp[i] = acc;
        }
        rhs_(t + c * hs, ytmp, kout);
      };
      stage(0.2, {{&k1, 0.2}}, k2);
      stage(0.3, {{&k1, 3.0 / 40}, {&k2, 9.0 / 40}}, k3);
      stage(0.8, {{&k1, 44.0 / 45}, {&k2, -56.0 / 15}, {&k3, 32.0 / 9}}, k4);
      stage(8.0 / 9,
            {{&k1, 19372.0 / 6561}, {&k2, -25360.0 / 2187}, {&k3, 64448.0 / 6561}, {&k4, -212.0 / 729}},
            k5);
      stage(1.0,
            {{&k1, 9017.0 / 3168}, {&k2, -355.0 / 33}, {&k3, 46732.0 / 5247}, {&k4, 49.0 / 176}, {&k5, -5103.0 / 18656}},
            k6);
      for (int i = 0; i < N; ++i)
        y5[i] = y[i] + hs * (35.0 / 384 * k1[i] + 500.0 / 1113 * k3[i] + 125.0 / 192 * k4[i] -
                             2187.0 / 6784 * k5[i] + 11.0 / 84 * k6[i]);
      rhs_(t + hs, y5, k7);

      double err = 0.0;
      for (int i = 0; i < N; ++i) {
        const double e = hs * (71.0 / 57600 * k1[i] - 71.0 / 16695 * k3[i] + 71.0 / 1920 * k4[i] -
                               17253.0 / 339200 * k5[i] + 22.0 / 525 * k6[i] - 1.0 / 40 * k7[i]);
        const double sc = opt_.atol + opt_.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
        err += (e / sc) * (e / sc);
      }
      err = std::sqrt(err / N);

      if (err <= 1.0) {
        StepInterpolant in;
        in.t0 = t;
        in.h = hs;
        for (int i = 0; i < N; ++i) {
          const double dy = y5[i] - y[i];
          const double bspl = hs * k1[i] - dy;
          in.r1[i] = y[i];
          in.r2[i] = dy;
          in.r3[i] = bspl;
          in.r4[i] = dy - hs * k7[i] - bspl;
          in.r5[i] = hs * (kD1 * k1[i] + kD3 * k3[i] + kD4 * k4[i] + kD5 * k5[i] + kD6 * k6[i] +
                           kD7 * k7[i]);
        }
        const double t_new = t + hs;
        if (obs && !obs(t, t_new, y5, in)) return y5;
        t = t_new;
        y = y5;
        k1 = k7;  // FSAL
        // PI controller
        const double fac = 0.9 * std::pow(err > 1e-30 ? err : 1e-30, -0.7 / 5.0) *
                           std::pow(err_prev, 0.4 / 5.0);
        h *= std::min(5.0, std::max(0.2, fac));
        err_prev = err > 1e-30 ? err : 1e-30;
      } else {
        h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      }
    }
    throw NumericalError("dopri5: max step count exceeded");
  }

 private:
  static constexpr double kD1 = -12715105075.0 / 11282082432.0;
  static constexpr double kD3 = 87487479700.0 / 32700410799.0;
  static constexpr double kD4 = -10690763975.0 / 1880347072.0;
  static constexpr double kD5 = 701980252875.0 / 199316789632.0;
  static constexpr double kD6 = -1453857185.0 / 822651844.0;
  static constexpr double kD7 = 69997945.0 / 29380423.0;

  double initial_step(double t, const State& y, const State& f0, double dir, double span) {
    double ny = 0.0, nf = 0.0;
    for (int i = 0; i < N; ++i) {
      ny = std::max(ny, std::abs(y[i]));
      nf = std::max(nf, std::abs(f0[i]));
    }
    double h = (nf > 1e-30) ? 0.01 * (ny + opt_.atol) / nf : 1e-6;
    (void)t;
    (void)dir;
    return std::min(h, 0.1 * std::abs(span) + 1e-12);
  }

  Rhs rhs_;
  Options opt_;
};

/// Locate a zero of component `comp` inside one accepted step by bisecting the
/// dense interpolant; the endpoint values must straddle zero.
template <int N>
double locate_zero(const typename Dopri5<N>::StepInterpolant& in, int comp, double xtol = 1e-12) {
  double a = in.t0, b = in.t0 + in.h;
  if (a > b) std::swap(a, b);
  double fa = in.eval(a)[comp];
  for (int i = 0; i < 200 && (b - a) > xtol; ++i) {
    double m = 0.5 * (a + b);
    double fm = in.eval(m)[comp];
    if (fm == 0.0) return m;
    if (std::signbit(fm) == std::signbit(fa)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace hypeig
