// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion carries its tolerance and, where stated, its
// wall-clock budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hypeig/asymptotics.hpp"
#include "hypeig/cli.hpp"
#include "hypeig/comparison.hpp"
#include "hypeig/eigenvalue.hpp"
#include "hypeig/funk.hpp"
#include "hypeig/sturm.hpp"

using namespace hypeig;

namespace {

struct Criterion {
  int id;
  std::string summary;
  std::function<bool(std::string&)> body;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria;

  criteria.push_back({1, "exact n=3 law on the (kappa, r) grid, all three methods, 1e-9", [](std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double kappa : {0.5, 1.0, 2.0})
      for (double r : {0.25, 1.0, kPi, 10.0}) {
        const double exact = kappa * kappa + kPi * kPi / (r * r);
        for (auto m : {EigenMethod::s_recursion, EigenMethod::hypergeom_root,
                       EigenMethod::ode_shooting}) {
          const double got = eigen(BallSpec{3, kappa, r}, m).lambda;
          worst = std::max(worst, std::abs(got - exact) / exact);
        }
      }
    const double dt = seconds_since(t0);
    detail = "worst rel err " + sci(worst) + ", " + sci(dt) + " s";
    return worst <= 1e-9 && dt < 1.0;
  }});

  criteria.push_back({2, "cross-method agreement 1e-8 for n=2..9, r in {0.5,1,2,5,10}", [](std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int n = 2; n <= 9; ++n)
      for (double r : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        BallSpec s{n, 1.0, r};
        const double lh = eigen(s, EigenMethod::hypergeom_root).lambda;
        const double ls = eigen(s, EigenMethod::ode_shooting).lambda;
        worst = std::max(worst, std::abs(lh - ls) / lh);
        if (n % 2 == 1) {
          const double lo = eigen(s, EigenMethod::s_recursion).lambda;
          worst = std::max(worst, std::abs(lh - lo) / lh);
        }
      }
    const double dt = seconds_since(t0);
    detail = "worst rel deviation " + sci(worst) + ", " + sci(dt) + " s";
    return worst <= 1e-8 && dt < 30.0;
  }});

  criteria.push_back({3, "bound sandwich: Borisov-Freitas and Savo intervals, zero violations", [](std::string& detail) {
    int violations = 0;
    for (int n = 2; n <= 9; ++n)
      for (double r : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        BallSpec s{n, 1.0, r};
        const double l = eigen(s).lambda;
        const auto b = bounds(s);
        if (b.bf_defined && !(l >= b.bf_lower - 1e-9 && l <= b.bf_upper + 1e-9)) ++violations;
        if (!(l >= b.savo_lower - 1e-9 && l <= b.savo_upper + 1e-9)) ++violations;
      }
    detail = std::to_string(violations) + " violations";
    return violations == 0;
  }});

  criteria.push_back({4, "large-r constants recovered within 1% for n in {5,7,9} and {2,4,6}", [](std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> grid{20.0, 40.0, 80.0, 160.0};
    struct Case {
      int n;
      double expect;
    };
    const Case cases[] = {{5, kPi},
                          {7, 1.5 * kPi},
                          {9, 11.0 * kPi / 6.0},
                          {2, -2.0 * kPi * kLn2},
                          {4, 2.0 * kPi * (1.0 - kLn2)},
                          {6, 2.0 * kPi * (4.0 / 3.0 - kLn2)}};
    double worst = 0.0;
    for (const auto& c : cases) {
      const double fitted = fit_expansion_constant(c.n, grid);
      worst = std::max(worst, std::abs(fitted - c.expect) / std::abs(c.expect));
    }
    const double dt = seconds_since(t0);
    detail = "worst rel err " + sci(worst) + ", " + sci(dt) + " s";
    return worst <= 0.01 && dt < 120.0;
  }});

  criteria.push_back({5, "small-r expansion residual for n=5 at r=0.025 below 1e-2", [](std::string& detail) {
    const double j32 = bessel_first_zero(1.5);
    double prev = 1e300;
    bool shrinking = true;
    double final_resid = 0.0;
    for (double r : {0.2, 0.1, 0.05, 0.025}) {
      const double resid =
          std::abs(eigen(BallSpec{5, 1.0, r}).lambda - 10.0 / 3.0 - j32 * j32 / (r * r));
      shrinking = shrinking && resid < prev;
      prev = resid;
      final_resid = resid;
    }
    detail = "residual at r=0.025 is " + sci(final_resid);
    return shrinking && final_resid <= 1e-2;
  }});

  criteria.push_back({6, "oscillation dichotomy: 100 randomized cases, margin 0.5, no misclassification", [](std::string& detail) {
    std::mt19937 rng(20260810);
    std::uniform_int_distribution<int> N(2, 9);
    std::uniform_real_distribution<double> M(0.5, 6.0);
    int wrong = 0;
    for (int i = 0; i < 100; ++i) {
      const int n = N(rng);
      const double threshold = (n - 1.0) * (n - 1.0);
      const bool above = i % 2 == 0;
      const double margin = M(rng);
      const double C = above ? threshold + margin : std::max(threshold - margin, 0.05);
      const bool analytic = is_oscillatory(n, C);
      const bool shot = oscillatory_by_shooting(n, C);
      if (analytic != above || shot != above) ++wrong;
    }
    detail = std::to_string(wrong) + " misclassifications";
    return wrong == 0;
  }});

  criteria.push_back({7, "comparison identity 1e-8 on the 3x3x3 grid; rigidity equality/strictness", [](std::string& detail) {
    double worst = 0.0;
    for (int n : {2, 3, 5})
      for (double kappa : {0.5, 1.0, 2.0})
        for (double r : {0.5, 1.0, 2.0}) {
          BallSpec s{n, kappa, r};
          TransplantSet t(s);
          const double lhs = t.lambda() * integrate_radial(
                                              [&](double rho) {
                                                const double v = t.Rnp2(rho);
                                                return v * v *
                                                       std::pow(std::sinh(kappa * rho), n + 1);
                                              },
                                              r, 1e-11);
          const double rhs = kappa * kappa * n * n *
                             integrate_radial(
                                 [&](double rho) {
                                   const double v = t.Rn(rho);
                                   return v * v * std::pow(std::sinh(kappa * rho), n - 1);
                                 },
                                 r, 1e-11);
          worst = std::max(worst, std::abs(lhs - rhs) / rhs);
        }
    bool rigidity_ok = true;
    for (int n : {2, 4}) {
      BallSpec s{n, 1.0, 1.0};
      const auto eq = compare(RadialMeasure::hyperbolic_model(n, 1.0), s);
      rigidity_ok = rigidity_ok && eq.inequality_ok && eq.rigidity_gap <= 1e-8;
      const auto strict = compare(RadialMeasure::funk_model(n), s);
      rigidity_ok = rigidity_ok && strict.inequality_ok && strict.rigidity_gap > 0.0;
    }
    detail = "worst identity residual " + sci(worst) +
             (rigidity_ok ? ", rigidity ok" : ", rigidity FAILED");
    return worst <= 1e-8 && rigidity_ok;
  }});

  criteria.push_back({8, "Funk vanishing <= 1e-4 via two routes for n in {2,3,5}; Klein concordance 1e-3", [](std::string& detail) {
    bool ok = true;
    std::string parts;
    for (int n : {2, 3, 5}) {
      const auto rep = funk_fundamental_frequency(n);
      int routes = 0;
      if (rep.rayleigh_route <= 1e-4) ++routes;
      if (rep.comparison_route <= 1e-4) ++routes;
      if (std::isfinite(rep.laplace_route) && rep.laplace_route <= 1e-4) ++routes;
      const double klein = klein_fundamental_frequency(n);
      const double expect = 0.25 * (n - 1.0) * (n - 1.0);
      const bool this_ok = rep.bound <= 1e-4 && routes >= 2 && rep.comparison_inequalities_ok &&
                           std::abs(klein - expect) <= 1e-3;
      ok = ok && this_ok;
      parts += " n=" + std::to_string(n) + (this_ok ? ":ok" : ":FAIL");
    }
    detail = parts;
    return ok;
  }});

  criteria.push_back({9, "McKean limit: lambda(n,1,50) - (n-1)^2/4 <= 5e-3 for n=2..7", [](std::string& detail) {
    double worst = 0.0;
    for (int n = 2; n <= 7; ++n) {
      const double excess =
          eigen(BallSpec{n, 1.0, 50.0}).lambda - 0.25 * (n - 1.0) * (n - 1.0);
      worst = std::max(worst, excess);
      if (excess <= 0.0) return false;
    }
    detail = "largest excess " + sci(worst);
    return worst <= 5e-3;
  }});

  criteria.push_back({10, "property suites (identities, Pfaff, derivatives, monotonicities, duality)", [](std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    auto checks = hypeig::cli::detail::selftest_checks();
    int failed = 0;
    for (auto& c : checks) {
      bool ok = false;
      try {
        ok = c.fn();
      } catch (...) {
      }
      if (!ok) {
        ++failed;
        detail += " " + c.name;
      }
    }
    const double dt = seconds_since(t0);
    detail = std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) +
             " checks passed, " + sci(dt) + " s" + detail;
    return failed == 0 && dt < 300.0;
  }});

  int failures = 0;
  for (auto& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("%s  criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", c.id, c.summary.c_str(),
                detail.c_str());
    std::fflush(stdout);
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  else std::printf("all %zu acceptance criteria passed\n", criteria.size());
  return failures == 0 ? 0 : 1;
}
