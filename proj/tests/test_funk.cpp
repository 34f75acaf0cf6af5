#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "hypeig/funk.hpp"
#include "hypeig/sturm.hpp"

using namespace hypeig;
using Catch::Approx;

namespace {
std::vector<double> rand_point(std::mt19937& rng, double radius) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> p{U(rng), U(rng), U(rng)};
  const double n = std::sqrt(hypeig::detail::dot(p, p));
  const double scale = radius * std::uniform_real_distribution<double>(0.05, 1.0)(rng) / n;
  for (auto& c : p) c *= scale;
  return p;
}
}  // namespace

TEST_CASE("FunkPoint enforces interiority") {
  CHECK_THROWS_AS(FunkPoint(std::vector<double>{0.8, 0.8, 0.0}), ParameterError);
  FunkPoint p(std::vector<double>{0.3, -0.2, 0.1});
  CHECK(funk_metric(p, std::vector<double>{1.0, 0.0, 0.0}) > 0.0);
}

TEST_CASE("Funk metric") {
  std::vector<double> zero{0.0, 0.0, 0.0}, x{0.3, -0.2, 0.1}, y{0.5, 0.1, -0.7};
  SECTION("reduces to the Euclidean norm at the origin") {
    CHECK(funk_metric(zero, y) == Approx(std::sqrt(0.25 + 0.01 + 0.49)).epsilon(1e-14));
  }
  SECTION("along the position vector F(x,x) = |x|/(1-|x|)") {
    const double nx = std::sqrt(hypeig::detail::dot(x, x));
    CHECK(funk_metric(x, x) == Approx(nx / (1.0 - nx)).epsilon(1e-13));
  }
  SECTION("positive homogeneity and non-reversibility") {
    std::mt19937 rng(17);
    for (int i = 0; i < 10; ++i) {
      auto p = rand_point(rng, 0.8);
      auto v = rand_point(rng, 1.0);
      const double t = 2.7;
      std::vector<double> tv(v), mv(v);
      for (auto& c : tv) c *= t;
      for (auto& c : mv) c = -c;
      CHECK(funk_metric(p, tv) == Approx(t * funk_metric(p, v)).epsilon(1e-12));
      if (std::abs(hypeig::detail::dot(p, v)) > 1e-3)
        CHECK(std::abs(funk_metric(p, v) - funk_metric(p, mv)) > 1e-6);
    }
  }
  SECTION("rejects exterior base points") {
    CHECK_THROWS_AS(funk_metric(std::vector<double>{1.2, 0.0, 0.0}, y), ParameterError);
  }
}

TEST_CASE("Funk co-metric and polar duality") {
  std::vector<double> zero{0.0, 0.0, 0.0}, xi{0.4, -0.9, 0.2};
  CHECK(funk_cometric(zero, xi) == Approx(std::sqrt(0.16 + 0.81 + 0.04)).epsilon(1e-14));
  SECTION("eikonal identity for the origin-based distance") {
    std::mt19937 rng(19);
    for (int i = 0; i < 100; ++i) {
      auto p = rand_point(rng, 0.9);
      const double np = std::sqrt(hypeig::detail::dot(p, p));
      if (np < 1e-2) continue;
      std::vector<double> grad(3);
      for (int j = 0; j < 3; ++j) grad[j] = p[j] / (np * (1.0 - np));
      CHECK(std::abs(funk_cometric(p, grad) - 1.0) <= 1e-10);
    }
  }
  SECTION("matches the discretized supremum") {
    std::mt19937 rng(23);
    for (int i = 0; i < 20; ++i) {
      auto p = rand_point(rng, 0.85);
      auto xi2 = rand_point(rng, 3.0);
      CHECK(std::abs(funk_cometric(p, xi2) - funk_cometric_sup(p, xi2)) <= 1e-6);
    }
  }
}

TEST_CASE("Funk distance") {
  std::vector<double> zero{0.0, 0.0, 0.0};
  SECTION("displayed special values") {
    std::vector<double> a{1.0 - std::exp(-1.0), 0.0, 0.0}, b{0.5, 0.0, 0.0};
    CHECK(funk_distance(zero, a) == Approx(1.0).epsilon(1e-13));
    CHECK(funk_distance(b, zero) == Approx(std::log(1.5)).epsilon(1e-13));
    CHECK(funk_distance(zero, b) == Approx(-std::log(0.5)).epsilon(1e-13));
  }
  SECTION("quasimetric: positivity, identity, triangle, asymmetry") {
    std::mt19937 rng(29);
    for (int i = 0; i < 30; ++i) {
      auto a = rand_point(rng, 0.9), b = rand_point(rng, 0.9), c = rand_point(rng, 0.9);
      const double dab = funk_distance(a, b);
      CHECK(dab >= 0.0);
      CHECK(funk_distance(a, a) == 0.0);
      CHECK(funk_distance(a, c) <= dab + funk_distance(b, c) + 1e-11);
    }
    std::vector<double> p{0.4, 0.0, 0.0};
    CHECK(funk_distance(zero, p) != Approx(funk_distance(p, zero)).epsilon(1e-3));
    CHECK(klein_distance(zero, p) == Approx(std::atanh(0.4)).epsilon(1e-13));
  }
}

TEST_CASE("Funk Rayleigh samples") {
  auto s = funk_rayleigh(2, 0.5);
  CHECK(s.quotient == Approx(0.25).epsilon(1e-14));
  CHECK(s.numerator / s.denominator == Approx(0.25).epsilon(1e-12));
  auto tiny = funk_rayleigh(3, 1e-3);
  CHECK(tiny.quotient == Approx(1e-6).epsilon(1e-12));
  CHECK(std::isfinite(tiny.denominator));
}

TEST_CASE("reversed-gradient energy diverges exactly up to alpha = 1/2") {
  for (double a : {0.2, 0.5}) CHECK(funk_reversed_energy_shells(3, a).diverges);
  for (double a : {0.75, 1.0, 2.0}) CHECK_FALSE(funk_reversed_energy_shells(3, a).diverges);
  auto rep = funk_reversed_energy_shells(2, 0.3);
  CHECK(rep.shells.size() == 41);
  CHECK(rep.shells.back() > rep.shells.front());  // partial integrals keep growing
}

TEST_CASE("Klein Rayleigh samples") {
  auto s = klein_rayleigh(2, 0.51);
  CHECK(s.quotient == Approx(0.2601).epsilon(1e-14));
  CHECK(std::isfinite(s.denominator));
  CHECK(s.denominator > 0.0);
  CHECK(klein_rayleigh(3, 1.0 + 1e-3).quotient == Approx(1.0).epsilon(3e-3));
  CHECK_THROWS_AS(klein_rayleigh(3, 0.9), DivergenceError);
  CHECK_THROWS_AS(klein_rayleigh(3, 1.0), DivergenceError);  // boundary excluded
}

TEST_CASE("radial Finsler-Laplace eigenvalue lambda_rho") {
  SECTION("no admissible root for small rho") {
    for (int n : {2, 3, 5}) CHECK_FALSE(funk_lambda_rho(n, 0.9).has_value());
  }
  SECTION("decreasing in rho with limit zero") {
    for (int n : {2, 3}) {
      double prev = 0.25;
      for (double rho : {0.98, 0.99, 0.999}) {
        auto lam = funk_lambda_rho(n, rho);
        REQUIRE(lam.has_value());
        CHECK(*lam < prev);
        CHECK(*lam > 0.0);
        prev = *lam;
      }
      CHECK(prev < 5e-3);
    }
  }
  SECTION("inverts the shooting oracle") {
    for (int n : {2, 3, 5}) {
      const double rho = 0.99;
      auto lam = funk_lambda_rho(n, rho);
      REQUIRE(lam.has_value());
      auto shot = shoot_funk(n, *lam, 0.9999995);
      REQUIRE(shot.first_zero.has_value());
      CHECK(std::abs(*shot.first_zero - rho) <= 1e-6);
    }
  }
  SECTION("profile normalization f(0) = -1 and boundary anchor") {
    CHECK(funk_profile_closed(3, 0.1, 0.0) == Approx(-1.0).epsilon(1e-14));
    // F(n-1, -1; n-1; 1) = 0 anchors (lambda, rho) -> (0, 1)
    CHECK(eval_2f1(HypergeomParams::real_pair(2.0, -1.0, 2.0), 1.0).value ==
          Approx(0.0).margin(1e-15));
  }
  CHECK_THROWS_AS(funk_lambda_rho(3, 1.5), ParameterError);
}

TEST_CASE("fundamental frequency drivers") {
  auto rep = funk_fundamental_frequency(2);
  CHECK(rep.bound <= 1e-4);
  CHECK(rep.comparison_inequalities_ok);
  int routes_below = 0;
  if (rep.rayleigh_route <= 1e-4) ++routes_below;
  if (rep.comparison_route <= 1e-4) ++routes_below;
  if (std::isfinite(rep.laplace_route) && rep.laplace_route <= 1e-4) ++routes_below;
  CHECK(routes_below >= 2);
  CHECK(std::isfinite(rep.laplace_route));  // available, slowly decaying route
  CHECK(klein_fundamental_frequency(2) == Approx(0.25).margin(1e-3));
  CHECK(klein_fundamental_frequency(3) == Approx(1.0).margin(1e-3));
}

TEST_CASE("documented curvature constants") {
  CHECK(kFunkFlagCurvature == -0.25);
  CHECK(std::isinf(funk_weighted_ricci(3, 3.0)));
  CHECK(funk_weighted_ricci(3, 3.0) < 0.0);
  CHECK(funk_weighted_ricci(3, std::numeric_limits<double>::infinity()) == Approx(-0.5));
  CHECK(funk_weighted_ricci(3, 5.0) == Approx(-0.5 - 16.0 / 8.0));
}
