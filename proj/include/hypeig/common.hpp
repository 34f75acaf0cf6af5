#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace hypeig {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kLn2 = 0.69314718055994530941723212145817657;

/// Invalid argument outside an operation's domain (bad c parameter, bad grid, ...).
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to converge; carries the best partial value.
class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string& what, double partial = std::nan(""))
      : std::runtime_error(what), partial_value(partial) {}
  double partial_value;
};

/// An integral diverges for the requested parameters.
class DivergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Volume of the n-dimensional Euclidean unit ball, omega_n = pi^{n/2} / Gamma(n/2 + 1).
/// Gamma at half-integers is built by the recurrence from Gamma(1/2) = sqrt(pi).
inline double unit_ball_volume(int n) {
  if (n < 1) throw ParameterError("unit_ball_volume: n must be >= 1");
  double gamma;  // Gamma(n/2 + 1)
  if (n % 2 == 0) {
    gamma = 1.0;
    for (int k = 2; k <= n / 2; ++k) gamma *= k;
  } else {
    gamma = std::sqrt(kPi);
    for (double x = 0.5; x <= n / 2.0 + 0.25; x += 1.0) gamma *= x;
  }
  return std::pow(kPi, n / 2.0) / gamma;
}

/// Compensated (Kahan) accumulator for long alternating/one-signed sums.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double term) {
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

/// log(sinh(x)) for x > 0 without overflow.
inline double log_sinh(double x) {
  return x - kLn2 + std::log1p(-std::exp(-2.0 * x));
}

}  // namespace hypeig
