#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hypeig/asymptotics.hpp"
#include "hypeig/eigenvalue.hpp"

using namespace hypeig;
using Catch::Approx;

TEST_CASE("three-dimensional law lambda = kappa^2 + pi^2/r^2") {
  for (double kappa : {0.5, 1.0, 2.0})
    for (double r : {0.25, 1.0, kPi}) {
      const double exact = kappa * kappa + kPi * kPi / (r * r);
      BallSpec s{3, kappa, r};
      for (auto m : {EigenMethod::s_recursion, EigenMethod::hypergeom_root,
                     EigenMethod::ode_shooting}) {
        const auto e = eigen(s, m);
        CHECK(e.lambda == Approx(exact).epsilon(1e-9));
        CHECK(e.method == m);
        CHECK(e.lambda == Approx(0.25 * 4.0 * kappa * kappa + e.alpha * e.alpha));
        CHECK(e.alpha >= e.bracket_lo);
        CHECK(e.alpha <= e.bracket_hi);
      }
    }
  CHECK(eigen_odd(BallSpec{3, 2.0, 1.0}).lambda == Approx(4.0 + kPi * kPi).epsilon(1e-10));
  CHECK(eigen_odd(BallSpec{3, 1.0, kPi}).lambda == Approx(2.0).epsilon(1e-10));
}

TEST_CASE("n = 5: root of alpha cos(2 alpha) tanh(2) = sin(2 alpha)") {
  // independent oracle: bisection on the displayed transcendental equation
  auto g = [](double a) { return a * std::cos(2.0 * a) * std::tanh(2.0) - std::sin(2.0 * a); };
  double lo = 1.2, hi = 2.2;
  REQUIRE(g(lo) * g(hi) < 0.0);
  for (int i = 0; i < 64; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) * g(lo) > 0.0 ? lo : hi) = mid;
  }
  const double alpha_oracle = 0.5 * (lo + hi);
  BallSpec s{5, 1.0, 2.0};
  CHECK(eigen_odd(s).alpha == Approx(alpha_oracle).epsilon(1e-10));
  const double l_odd = eigen_odd(s).lambda;
  CHECK(eigen_hypergeom(s).lambda == Approx(l_odd).epsilon(1e-8));
  CHECK(eigen_shooting(s).lambda == Approx(l_odd).epsilon(1e-8));
}

TEST_CASE("cross-method agreement at n = 7") {
  BallSpec s{7, 1.0, 2.0};
  const double a = eigen(s, EigenMethod::s_recursion).lambda;
  const double b = eigen(s, EigenMethod::hypergeom_root).lambda;
  CHECK(std::abs(a - b) <= 1e-8 * a);
}

TEST_CASE("kappa scaling lambda(n,kappa,r) = kappa^2 lambda(n,1,kappa r)") {
  for (int n : {2, 4, 5})
    for (double kappa : {0.3, 2.5}) {
      const double r = 1.7;
      const double lhs = eigen(BallSpec{n, kappa, r}).lambda;
      const double rhs = kappa * kappa * eigen(BallSpec{n, 1.0, kappa * r}).lambda;
      CHECK(lhs == Approx(rhs).epsilon(1e-11));
    }
}

TEST_CASE("monotone decrease in the radius and the McKean floor") {
  for (int n : {2, 4, 7}) {
    double prev = 1e300;
    const double mckean = 0.25 * (n - 1.0) * (n - 1.0);
    for (double r : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
      const double l = eigen(BallSpec{n, 1.0, r}).lambda;
      CHECK(l < prev);
      CHECK(l > mckean);
      prev = l;
    }
    CHECK(eigen(BallSpec{n, 1.0, 50.0}).lambda - mckean <= 5e-3);
  }
}

TEST_CASE("Borisov-Freitas membership") {
  for (auto [n, r] : {std::pair<int, double>{2, 5.0}, {4, 3.0}}) {
    BallSpec s{n, 1.0, r};
    const double l = eigen(s).lambda;
    const auto b = bounds(s);
    REQUIRE(b.bf_defined);
    CHECK(l >= b.bf_lower - 1e-10);
    CHECK(l <= b.bf_upper + 1e-10);
  }
}

TEST_CASE("residual is small against the local scale of the boundary function") {
  BallSpec s{4, 1.0, 2.0};
  const auto e = eigen_hypergeom(s);
  const double z = -std::pow(std::sinh(0.5 * s.r), 2);
  auto g = [&](double gamma) {
    return eval_2f1(HypergeomParams::conjugate_pair(1.5, gamma, 2.0), z).value;
  };
  const double h = kPi / (8.0 * s.r);
  const double scale = std::max(std::abs(g(e.alpha - h)), std::abs(g(e.alpha + h)));
  CHECK(std::abs(e.residual) <= 1e-8 * scale);
}

TEST_CASE("dispatcher and forced methods") {
  CHECK(eigen(BallSpec{5, 1.0, 1.0}).method == EigenMethod::s_recursion);
  CHECK(eigen(BallSpec{4, 1.0, 1.0}).method == EigenMethod::hypergeom_root);
  CHECK(eigen(BallSpec{4, 1.0, 1.0}, EigenMethod::ode_shooting).method ==
        EigenMethod::ode_shooting);
  CHECK_THROWS_AS(eigen_odd(BallSpec{4, 1.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(eigen_odd(BallSpec{27, 1.0, 1.0}), ParameterError);  // l = 13 > table
  CHECK_NOTHROW(eigen_hypergeom(BallSpec{27, 1.0, 1.0}));
  CHECK_THROWS_AS(eigen(BallSpec{1, 1.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(eigen(BallSpec{3, -1.0, 1.0}), ParameterError);
}

TEST_CASE("small-radius regime carries a note and matches the Bessel expansion") {
  BallSpec s{5, 1.0, 5e-4};
  const auto e = eigen(s);
  CHECK_FALSE(e.note.empty());
  const double expansion = small_r_expansion(5, 1.0, s.r);
  CHECK(e.lambda == Approx(expansion).epsilon(1e-6));
}
