#pragma once

#include <array>
#include <cmath>
#include <map>
#include <tuple>
#include <vector>

#include "hypeig/common.hpp"

namespace hypeig {

/// Largest supported index of the S_k family (odd dimensions up to n = 2*12+1).
inline constexpr int kSMaxIndex = 12;

namespace detail {

// S_k(gamma, x) = N_k(gamma, x) / (gamma sinh^{2k-1} x) where N_k is a
// homogeneous polynomial of degree k-1 in (cosh x, sinh x) whose coefficients
// are polynomials in gamma, attached to sin(gamma x) or cos(gamma x):
//   N_1 = sin(gamma x),   N_{k+1} = sinh(x) dN_k/dx - (2k-1) cosh(x) N_k.
// The tables below store N_k term-by-term; evaluation uses the scaled
// variables 2 cosh(x) e^{-x} and 2 sinh(x) e^{-x} so that no power of
// sinh/cosh ever overflows.
struct STerm {
  double coef;
  int g;   // power of gamma
  int m;   // power of cosh
  int p;   // power of sinh
  bool is_cos;
};

using STable = std::vector<STerm>;

inline std::array<STable, kSMaxIndex + 1> build_s_tables() {
  std::array<STable, kSMaxIndex + 1> tables;
  tables[1] = {STerm{1.0, 0, 0, 0, false}};
  using Key = std::tuple<int, int, int, bool>;
  for (int k = 1; k < kSMaxIndex; ++k) {
    std::map<Key, double> acc;
    auto add = [&](double c, int g, int m, int p, bool is_cos) {
      if (c != 0.0) acc[{g, m, p, is_cos}] += c;
    };
    for (const STerm& t : tables[k]) {
      // sinh * d/dx of the term
      if (t.m > 0) add(t.coef * t.m, t.g, t.m - 1, t.p + 2, t.is_cos);
      if (t.p > 0) add(t.coef * t.p, t.g, t.m + 1, t.p, t.is_cos);
      add(t.is_cos ? -t.coef : t.coef, t.g + 1, t.m, t.p + 1, !t.is_cos);
      // -(2k-1) cosh * term
      add(-(2.0 * k - 1.0) * t.coef, t.g, t.m + 1, t.p, t.is_cos);
    }
    STable next;
    for (const auto& [key, c] : acc) {
      if (c == 0.0) continue;
      next.push_back(STerm{c, std::get<0>(key), std::get<1>(key), std::get<2>(key),
                           std::get<3>(key)});
    }
    tables[k + 1] = std::move(next);
  }
  return tables;
}

inline const STable& s_table(int k) {
  static const auto tables = build_s_tables();
  if (k < 1 || k > kSMaxIndex)
    throw ParameterError("S: index k out of supported range 1..12 (unsupported dimension)");
  return tables[k];
}

/// N_k(gamma, x) scaled by (2 e^{-x})^{k-1}: same sign and same zeros in
/// gamma as S_k, bounded for every x > 0.
inline double s_numerator_scaled(int k, double gamma, double x) {
  const STable& table = s_table(k);
  const double e2 = std::exp(-2.0 * x);
  const double ch = 1.0 + e2;  // 2 cosh(x) e^{-x}
  const double sh = 1.0 - e2;  // 2 sinh(x) e^{-x}
  const double s = std::sin(gamma * x), c = std::cos(gamma * x);
  double total = 0.0;
  for (const STerm& t : table) {
    double v = t.coef * (t.is_cos ? c : s);
    for (int i = 0; i < t.g; ++i) v *= gamma;
    for (int i = 0; i < t.m; ++i) v *= ch;
    for (int i = 0; i < t.p; ++i) v *= sh;
    total += v;
  }
  return total;
}

}  // namespace detail

/// S_1(gamma, x) = sin(gamma x)/(gamma sinh x), S_k = (dS_{k-1}/dx)/sinh x,
/// evaluated from the precomputed closed form; supported for k <= 12.
inline double S(int k, double gamma, double x) {
  if (gamma <= 0.0 || x <= 0.0) throw ParameterError("S: gamma and x must be positive");
  const double num = detail::s_numerator_scaled(k, gamma, x);
  if (num == 0.0) return 0.0;
  // S_k = num * (e^x/2)^{k-1} / (gamma sinh^{2k-1} x); assemble in log scale.
  const double log_mag = std::log(std::abs(num)) + (k - 1) * (x - kLn2) - std::log(gamma) -
                         (2 * k - 1) * log_sinh(x);
  return std::copysign(std::exp(log_mag), num);
}

}  // namespace hypeig
