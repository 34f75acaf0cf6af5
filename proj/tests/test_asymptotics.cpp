#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "hypeig/asymptotics.hpp"

using namespace hypeig;
using Catch::Approx;

namespace {

// Independent oracle for a first Bessel zero: bisection on the library
// implementation of cyl_bessel_j (a code path disjoint from bessel_j).
double stdlib_bessel_zero(double nu, double lo, double hi) {
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::cyl_bessel_j(nu, mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("first Bessel zeros") {
  CHECK(bessel_first_zero(0.5) == Approx(kPi).epsilon(1e-10));
  CHECK(bessel_first_zero(0.0) == Approx(2.404825557695773).epsilon(1e-10));
  CHECK(bessel_first_zero(0.0) == Approx(stdlib_bessel_zero(0.0, 2.0, 3.0)).epsilon(1e-10));
  // j_{3/2,1} solves tan(phi) = phi
  const double j32 = bessel_first_zero(1.5);
  CHECK(j32 == Approx(4.493409457909064).epsilon(1e-10));
  CHECK(j32 * std::cos(j32) - std::sin(j32) == Approx(0.0).margin(1e-9));
  CHECK(bessel_first_zero(4.0) == Approx(stdlib_bessel_zero(4.0, 5.0, 9.0)).epsilon(1e-9));
  CHECK_THROWS_AS(bessel_first_zero(-0.5), ParameterError);
}

TEST_CASE("large-radius expansion values") {
  CHECK(large_r_expansion(3, 1.0, 10.0) == Approx(1.0 + kPi * kPi / 100.0).epsilon(1e-15));
  CHECK(large_r_expansion(5, 1.0, 20.0) ==
        Approx(4.0 + kPi * kPi / 400.0 * std::pow(1.0 + 1.0 / 20.0, 2)).epsilon(1e-15));
  CHECK(large_r_expansion(2, 1.0, 20.0) ==
        Approx(0.25 + kPi * kPi / 400.0 * std::pow(1.0 - kLn2 / 10.0, 2)).epsilon(1e-15));
}

TEST_CASE("small-radius expansion values") {
  const double j32 = bessel_first_zero(1.5);
  CHECK(small_r_expansion(5, 1.0, 0.3) ==
        Approx(j32 * j32 / 0.09 + 10.0 / 3.0).epsilon(1e-12));
  CHECK(small_r_expansion(3, 1.0, 0.7) == Approx(kPi * kPi / 0.49 + 1.0).epsilon(1e-9));
  // n(n-1) kappa^2/6 at n = 2, kappa = 2 is (2/6)*4 = 4/3
  CHECK(small_r_expansion(2, 2.0, 0.5) ==
        Approx(std::pow(bessel_first_zero(0.0), 2) / 0.25 + 4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("bound set") {
  SECTION("the tail integral is pi^2/6") {
    CHECK(savo_integral() == Approx(kPi * kPi / 6.0).epsilon(1e-10));
    CHECK(savo_integral() == Approx(1.6449340668).epsilon(1e-9));
  }
  SECTION("n = 3, kappa = 1, r = 4 Savo interval") {
    const auto b = bounds(BallSpec{3, 1.0, 4.0});
    CHECK(b.savo_lower == Approx(1.0 + kPi * kPi / 16.0 - 4.0 * kPi * kPi / (2.0 * 64.0)));
    const double c3 = kPi * kPi * (9.0 - 1.0) / 2.0 * savo_integral();
    CHECK(b.savo_upper == Approx(1.0 + kPi * kPi / 16.0 + c3 / 64.0));
  }
  SECTION("n = 2, kappa = 1, r = 1 Borisov-Freitas interval") {
    const auto b = bounds(BallSpec{2, 1.0, 1.0});
    REQUIRE(b.bf_defined);
    const double j0 = bessel_first_zero(0.0);
    CHECK(b.bf_lower ==
          Approx(j0 * j0 + 0.25 * (1.0 - 1.0 / std::pow(std::sinh(1.0), 2) + 1.0)));
    CHECK(b.bf_upper == Approx(j0 * j0 + 1.0 / 3.0));
  }
  SECTION("Borisov-Freitas is marked unavailable away from kappa = 1") {
    const auto b = bounds(BallSpec{3, 2.0, 1.0});
    CHECK_FALSE(b.bf_defined);
    CHECK(std::isnan(b.bf_lower));
    CHECK(b.mckean_lower == Approx(4.0));
    CHECK(b.cheng_upper == Approx(4.0));
  }
}

TEST_CASE("expansion constants via recurrences") {
  CHECK(recurrence_constants(Parity::odd, 2).c_l == Approx(kPi).epsilon(1e-14));
  CHECK(recurrence_constants(Parity::odd, 3).c_l == Approx(1.5 * kPi).epsilon(1e-14));
  CHECK(recurrence_constants(Parity::odd, 4).c_l == Approx(11.0 * kPi / 6.0).epsilon(1e-14));
  CHECK(recurrence_constants(Parity::even, 1).c_l == Approx(-2.0 * kPi * kLn2).epsilon(1e-14));
  CHECK(recurrence_constants(Parity::even, 2).c_l ==
        Approx(2.0 * kPi * (1.0 - kLn2)).epsilon(1e-14));
  CHECK(recurrence_constants(Parity::even, 3).c_l ==
        Approx(2.0 * kPi * (4.0 / 3.0 - kLn2)).epsilon(1e-14));
  CHECK_THROWS_AS(recurrence_constants(Parity::odd, 1), ParameterError);
  CHECK_THROWS_AS(recurrence_constants(Parity::even, 0), ParameterError);
}

TEST_CASE("harmonic bracket comparison across parities at l = 50") {
  double h_odd = 0.0;
  for (int j = 1; j <= 49; ++j) h_odd += 1.0 / j;
  double h_even = -kLn2;
  for (int j = 1; j <= 97; j += 2) h_even += 1.0 / j;
  CHECK(h_odd / (2.0 * h_even) == Approx(1.0).epsilon(0.02));
}

TEST_CASE("fitted expansion constants") {
  const std::vector<double> grid{20.0, 40.0, 80.0, 160.0};
  CHECK(fit_expansion_constant(5, grid) == Approx(kPi).epsilon(0.01));
  CHECK(fit_expansion_constant(2, grid) == Approx(-2.0 * kPi * kLn2).epsilon(0.01));
  CHECK(std::abs(fit_expansion_constant(3, grid)) <= 1e-6);  // exact law, no correction
  CHECK_THROWS_AS(fit_expansion_constant(5, std::vector<double>{20.0, 40.0, 80.0}),
                  ParameterError);
  CHECK_THROWS_AS(fit_expansion_constant(5, std::vector<double>{10.0, 40.0, 80.0, 160.0}),
                  ParameterError);
}

TEST_CASE("the expansion exponent is rigid") {
  const std::vector<double> grid{20.0, 40.0, 80.0, 160.0};
  const auto low = expansion_residual_sequence(2, 1.5, grid);
  for (std::size_t i = 1; i < low.size(); ++i) CHECK(std::abs(low[i]) < std::abs(low[i - 1]));
  const auto high = expansion_residual_sequence(2, 2.5, grid);
  for (std::size_t i = 1; i < high.size(); ++i) CHECK(std::abs(high[i]) > std::abs(high[i - 1]));
}

TEST_CASE("small-radius residuals shrink") {
  double prev = 1e300;
  for (double r : {0.2, 0.1, 0.05, 0.025}) {
    const double resid =
        std::abs(eigen(BallSpec{5, 1.0, r}).lambda - small_r_expansion(5, 1.0, r)) * r * r;
    CHECK(resid < prev);
    prev = resid;
  }
}

TEST_CASE("large-radius expansion error decays faster than 1/r^3") {
  for (int n : {4, 5}) {
    double prev = -1.0;
    for (double r : {40.0, 80.0, 160.0}) {
      const double diff = std::abs(eigen(BallSpec{n, 1.0, r}).lambda - large_r_expansion(n, 1.0, r));
      if (prev >= 0.0) CHECK(diff <= 0.5 * prev);  // o(1/r^3): halving beats ratio 1/2
      prev = diff;
    }
  }
}
