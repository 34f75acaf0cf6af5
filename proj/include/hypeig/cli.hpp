#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hypeig/asymptotics.hpp"
#include "hypeig/comparison.hpp"
#include "hypeig/eigenvalue.hpp"
#include "hypeig/funk.hpp"
#include "hypeig/hypergeom.hpp"
#include "hypeig/sturm.hpp"

namespace hypeig::cli {

enum class Command { eigen, table, bounds, compare, funk, selftest };
enum class OutputFormat { json, csv, plain };

struct RunConfig {
  Command command = Command::eigen;
  int n = 3;
  double kappa = 1.0;
  double r = 1.0;
  std::vector<double> r_grid;  // non-empty for table
  std::optional<EigenMethod> method;
  OutputFormat format = OutputFormat::plain;
  std::string out_path;  // empty -> stdout
  std::string measure = "hyperbolic";
  double tol = 0.0;  // root tolerance override (HYPEIG_TOL)
};

/// Grid spec "start:stop:count,log|lin" -> strictly increasing abscissae.
inline std::vector<double> parse_grid(const std::string& spec) {
  const auto comma = spec.find(',');
  std::string nums = spec.substr(0, comma);
  std::string mode = comma == std::string::npos ? "lin" : spec.substr(comma + 1);
  double start, stop;
  long count;
  char c1, c2;
  std::istringstream ss(nums);
  if (!(ss >> start >> c1 >> stop >> c2 >> count) || c1 != ':' || c2 != ':')
    throw ParameterError("grid spec must be start:stop:count[,log|lin]");
  if (!(start > 0.0 && stop > start && count >= 2))
    throw ParameterError("grid spec needs 0 < start < stop and count >= 2");
  if (mode != "log" && mode != "lin") throw ParameterError("grid mode must be log or lin");
  std::vector<double> grid(count);
  for (long i = 0; i < count; ++i) {
    const double t = (double)i / (count - 1);
    grid[i] = mode == "log" ? start * std::pow(stop / start, t) : start + (stop - start) * t;
  }
  return grid;
}

namespace detail {

inline std::string sig15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline std::string shortest(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Minimal flat-object JSON writer with fixed field order and %.15g numerals.
class JsonObject {
 public:
  JsonObject& field(const std::string& k, double v) {
    entries_.push_back("\"" + k + "\": " + (std::isnan(v) ? "null" : sig15(v)));
    return *this;
  }
  JsonObject& field(const std::string& k, long v) {
    entries_.push_back("\"" + k + "\": " + std::to_string(v));
    return *this;
  }
  JsonObject& field(const std::string& k, int v) { return field(k, (long)v); }
  JsonObject& field(const std::string& k, bool v) {
    entries_.push_back("\"" + k + "\": " + (v ? "true" : "false"));
    return *this;
  }
  JsonObject& field(const std::string& k, const std::string& v) {
    entries_.push_back("\"" + k + "\": \"" + v + "\"");
    return *this;
  }
  JsonObject& raw(const std::string& k, const std::string& json) {
    entries_.push_back("\"" + k + "\": " + json);
    return *this;
  }
  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) s += ", ";
      s += entries_[i];
    }
    return s + "}";
  }

 private:
  std::vector<std::string> entries_;
};

inline JsonObject schema_header(const std::string& command) {
  JsonObject o;
  o.field("hypeig_schema", 1).field("command", command);
  return o;
}

struct TableRow {
  double r, lambda, large_r, small_r, bf_lower, bf_upper, savo_lower, savo_upper;
};

inline TableRow table_row(int n, double kappa, double r, std::optional<EigenMethod> method,
                          double tol) {
  BallSpec s{n, kappa, r};
  TableRow row;
  row.r = r;
  row.lambda = eigen(s, method, tol).lambda;
  row.large_r = large_r_expansion(n, kappa, r);
  row.small_r = small_r_expansion(n, kappa, r);
  const auto b = bounds(s);
  row.bf_lower = b.bf_lower;
  row.bf_upper = b.bf_upper;
  row.savo_lower = b.savo_lower;
  row.savo_upper = b.savo_upper;
  return row;
}

inline RadialMeasure make_measure(const std::string& name, int n, double kappa) {
  if (name == "hyperbolic") return RadialMeasure::hyperbolic_model(n, kappa);
  if (name == "euclidean") return RadialMeasure::euclidean_model(n);
  if (name == "funk") return RadialMeasure::funk_model(n);
  std::ifstream in(name);
  if (!in) throw ParameterError("measure '" + name + "' is neither a registry name nor a readable CSV");
  return RadialMeasure::from_csv(in, n, name);
}

struct Check {
  std::string name;
  std::function<bool()> fn;
};

inline std::vector<Check> selftest_checks() {
  using std::abs;
  std::vector<Check> checks;
  auto add = [&](std::string name, std::function<bool()> fn) {
    checks.push_back({std::move(name), std::move(fn)});
  };

  add("2f1_value_at_zero_is_one", [] {
    return eval_2f1(HypergeomParams::conjugate_pair(2.0, 1.3, 2.5), 0.0).value == 1.0;
  });
  add("2f1_sine_identity", [] {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> U(0.05, 5.0);
    for (int i = 0; i < 20; ++i) {
      const double g = U(rng), x = U(rng);
      const double sh = std::sinh(0.5 * x);
      const double v = eval_2f1(HypergeomParams::conjugate_pair(1.0, g, 1.5), -sh * sh).value;
      if (abs(v - std::sin(g * x) / (g * std::sinh(x))) > 1e-9) return false;
    }
    return true;
  });
  add("2f1_s_family_identity", [] {
    std::mt19937 rng(102);
    std::uniform_real_distribution<double> U(0.1, 4.0);
    for (int k = 1; k <= 3; ++k)
      for (int i = 0; i < 10; ++i) {
        const double g = U(rng), x = U(rng);
        double dfact = 1.0;
        for (int j = 1; j <= 2 * k - 1; j += 2) dfact *= j;
        double denom = 1.0;
        for (int j = 1; j <= k - 1; ++j) denom *= j * j + g * g;
        const double sh = std::sinh(0.5 * x);
        const double lhs =
            eval_2f1(HypergeomParams::conjugate_pair(k, g, k + 0.5), -sh * sh).value;
        const double rhs = (k % 2 ? 1.0 : -1.0) * dfact / denom * S(k, g, x);
        if (abs(lhs - rhs) > 1e-8 * std::max(abs(lhs), 1e-8)) return false;
      }
    return true;
  });
  add("2f1_pfaff_consistency", [] {
    std::mt19937 rng(103);
    std::uniform_real_distribution<double> P(0.2, 3.0), Z(-0.95, -0.05);
    for (int i = 0; i < 20; ++i) {
      auto p = HypergeomParams::real_pair(P(rng), P(rng), P(rng) + 1.0);
      const double z = Z(rng);
      const double a = eval_2f1_with(p, z, Hyp2f1Strategy::series).value;
      const double b = eval_2f1_with(p, z, Hyp2f1Strategy::pfaff_series).value;
      if (abs(a - b) > 1e-10 * std::max(abs(a), 1e-12)) return false;
    }
    return true;
  });
  add("2f1_derivative_vs_finite_difference", [] {
    std::mt19937 rng(104);
    std::uniform_real_distribution<double> P(0.3, 2.5), Z(-10.0, -0.05), G(0.2, 2.0);
    for (int i = 0; i < 50; ++i) {
      const bool conj = i % 2 == 0;
      const auto p = conj ? HypergeomParams::conjugate_pair(P(rng), G(rng), P(rng) + 1.0)
                          : HypergeomParams::real_pair(P(rng), P(rng), P(rng) + 1.0);
      const double z = Z(rng);
      const double h = 1e-5 * std::max(1.0, abs(z));
      const double fd =
          (eval_2f1(p, z + h).value - eval_2f1(p, z - h).value) / (2.0 * h);
      const double d = eval_2f1_derivative(p, z);
      if (abs(d - fd) > 1e-6 * std::max(abs(d), 1e-10)) return false;
    }
    return true;
  });
  add("ratio_cf_decreasing_and_consistent", [] {
    const double lam = 7.3;
    double prev = 1e300;
    for (double rho : {0.1, 0.35, 0.6, 0.85, 1.1}) {
      const double v = ratio_cf(5, 1.0, lam, rho);
      if (v >= prev) return false;
      prev = v;
      const double g = std::sqrt(lam - 4.0);
      const double z = -std::pow(std::sinh(0.5 * rho), 2);
      const double rn = eval_2f1(HypergeomParams::conjugate_pair(2.0, g, 2.5), z).value;
      const double rp = eval_2f1(HypergeomParams::conjugate_pair(3.0, g, 3.5), z).value;
      if (abs(v - rn / (rp * std::sinh(rho))) > 1e-8 * abs(v)) return false;
    }
    return true;
  });
  add("oscillation_dichotomy", [] {
    std::mt19937 rng(105);
    std::uniform_int_distribution<int> N(2, 7);
    std::uniform_real_distribution<double> M(0.5, 4.0);
    for (int i = 0; i < 10; ++i) {
      const int n = N(rng);
      const double margin = M(rng);
      const double thr = (n - 1.0) * (n - 1.0);
      const double below = std::max(thr - margin, 0.05);
      if (!is_oscillatory(n, thr + margin) || is_oscillatory(n, below)) return false;
      if (!oscillatory_by_shooting(n, thr + margin)) return false;
      if (oscillation_zero_count(n, below) != 0) return false;
    }
    return true;
  });
  add("sturm_matches_closed_form", [] {
    std::mt19937 rng(106);
    std::uniform_int_distribution<int> N(2, 6);
    std::uniform_real_distribution<double> C(1.0, 40.0);
    for (int i = 0; i < 5; ++i) {
      const int n = N(rng);
      const double c = C(rng);
      auto res = shoot_hyperbolic(n, c, 0.9);
      const double disc = (n - 1.0) * (n - 1.0) - c;
      for (std::size_t j = 1; j < res.samples.size(); j += res.samples.size() / 10 + 1) {
        auto [rho, f] = res.samples[j];
        if (rho < 0.01) continue;
        const double z = rho * rho / (rho * rho - 1.0);
        const double fc =
            disc < 0
                ? eval_2f1(HypergeomParams::conjugate_pair(0.5 * (n - 1.0),
                                                           0.5 * std::sqrt(-disc), 0.5 * n),
                           z)
                      .value
                : eval_2f1(HypergeomParams::real_pair(0.5 * (n - 1.0 + std::sqrt(disc)),
                                                      0.5 * (n - 1.0 - std::sqrt(disc)), 0.5 * n),
                           z)
                      .value;
        if (abs(f - fc) > 1e-6 * (1.0 + abs(fc))) return false;
      }
    }
    return true;
  });
  add("eigen_cross_method_agreement", [] {
    for (int n : {3, 4, 5})
      for (double r : {1.0, 5.0}) {
        BallSpec s{n, 1.0, r};
        const double l1 = eigen(s, EigenMethod::hypergeom_root).lambda;
        const double l2 = eigen(s, EigenMethod::ode_shooting).lambda;
        if (abs(l1 - l2) > 1e-8 * l1) return false;
        if (n % 2 == 1 && abs(eigen(s, EigenMethod::s_recursion).lambda - l1) > 1e-8 * l1)
          return false;
      }
    return true;
  });
  add("eigen_decreasing_in_radius", [] {
    for (int n : {2, 5}) {
      double prev = 1e300;
      for (double r : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
        const double l = eigen(BallSpec{n, 1.0, r}).lambda;
        if (l >= prev) return false;
        prev = l;
      }
    }
    return true;
  });
  add("bound_sandwich", [] {
    for (int n = 2; n <= 6; ++n)
      for (double r : {0.5, 2.0, 10.0}) {
        BallSpec s{n, 1.0, r};
        const double l = eigen(s).lambda;
        const auto b = bounds(s);
        if (!(l >= b.mckean_lower)) return false;
        if (b.bf_defined && !(l >= b.bf_lower - 1e-9 && l <= b.bf_upper + 1e-9)) return false;
        if (!(l >= b.savo_lower - 1e-9 && l <= b.savo_upper + 1e-9)) return false;
      }
    return true;
  });
  add("transplant_monotonicity_and_sign", [] {
    BallSpec s{4, 1.0, 1.5};
    TransplantSet t(s);
    double prev_rn = 2.0, prev_ratio = 1e300;
    int sign_changes = 0;
    double prev_h = -1.0;
    for (int i = 1; i <= 100; ++i) {
      const double rho = s.r * i / 101.0;
      const double rn = t.Rn(rho);
      if (rn >= prev_rn) return false;
      prev_rn = rn;
      const double ratio = rn / (t.Rnp2(rho) * std::sinh(rho));
      if (ratio >= prev_ratio) return false;
      prev_ratio = ratio;
      const double h = t.H(rho);
      if (i > 1 && std::signbit(h) != std::signbit(prev_h)) ++sign_changes;
      prev_h = h;
    }
    return sign_changes == 1;
  });
  add("comparison_identity_and_equality_case", [] {
    for (int n : {2, 5}) {
      BallSpec s{n, 1.0, 1.0};
      TransplantSet t(s);
      const double lhs = t.lambda() * integrate_radial(
                                          [&](double rho) {
                                            const double v = t.Rnp2(rho);
                                            return v * v * std::pow(std::sinh(rho), n + 1);
                                          },
                                          s.r, 1e-11);
      const double rhs = (double)n * n * integrate_radial(
                                             [&](double rho) {
                                               const double v = t.Rn(rho);
                                               return v * v * std::pow(std::sinh(rho), n - 1);
                                             },
                                             s.r, 1e-11);
      if (abs(lhs - rhs) > 1e-8 * rhs) return false;
      auto rep = compare(RadialMeasure::hyperbolic_model(n, 1.0), s);
      if (!rep.inequality_ok || rep.rigidity_gap > 1e-8) return false;
      if (abs(rep.rayleigh_upper - rep.lambda_model) > 1e-8 * rep.lambda_model) return false;
    }
    return true;
  });
  add("psi_defects", [] {
    BallSpec s{3, 1.0, 2.0};
    TransplantSet t(s);
    auto psi_h = t.psi(RadialMeasure::hyperbolic_model(3, 1.0));
    auto psi_f = t.psi(RadialMeasure::funk_model(3));
    double prev = -1e300;
    for (int i = 1; i <= 50; ++i) {
      const double rho = s.r * i / 50.0;
      if (abs(psi_h(rho)) > 1e-10) return false;
      const double pf = psi_f(rho);
      if (pf < -1e-12 || pf < prev - 1e-12) return false;
      prev = pf;
    }
    return true;
  });
  add("eikonal_identity", [] {
    std::mt19937 rng(107);
    std::uniform_real_distribution<double> U(-0.55, 0.55);
    for (int i = 0; i < 100; ++i) {
      std::vector<double> p{U(rng), U(rng), U(rng)};
      const double np = std::sqrt(hypeig::detail::dot(p, p));
      if (np < 1e-2) continue;
      std::vector<double> grad(3);
      for (int j = 0; j < 3; ++j) grad[j] = p[j] / (np * (1.0 - np));
      if (abs(funk_cometric(p, grad) - 1.0) > 1e-10) return false;
    }
    return true;
  });
  add("polar_duality", [] {
    std::mt19937 rng(108);
    std::uniform_real_distribution<double> U(-0.55, 0.55), X(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
      std::vector<double> p{U(rng), U(rng), U(rng)}, xi{X(rng), X(rng), X(rng)};
      if (abs(funk_cometric(p, xi) - funk_cometric_sup(p, xi)) > 1e-6) return false;
    }
    return true;
  });
  add("funk_volume_layer_cake", [] {
    auto fk = RadialMeasure::funk_model(4);
    for (double r : {0.5, 2.0, 6.0}) {
      const double mu = layer_cake(fk, [](double) { return 1.0; }, r);
      const double exact = unit_ball_volume(4) * std::pow(-std::expm1(-r), 4);
      if (abs(mu - exact) > 1e-10 * exact) return false;
    }
    return true;
  });
  add("rayleigh_quotients", [] {
    if (abs(funk_rayleigh(2, 0.5).quotient - 0.25) > 1e-14) return false;
    if (abs(klein_rayleigh(2, 0.51).quotient - 0.2601) > 1e-12) return false;
    try {
      klein_rayleigh(3, 0.9);
      return false;
    } catch (const DivergenceError&) {
    }
    return funk_reversed_energy_shells(2, 0.4).diverges &&
           !funk_reversed_energy_shells(2, 1.0).diverges;
  });
  return checks;
}

}  // namespace detail

/// Execute one command; emits the requested artifact on `out` (or the file
/// given by out_path) and diagnostics on `err`.  Returns the exit status:
/// 0 when every requested check passes, 1 on numerical failure.
inline int run(const RunConfig& cfg, std::ostream& out_stream, std::ostream& err) {
  std::ofstream file;
  std::ostream* outp = &out_stream;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) {
      err << "cannot open output path " << cfg.out_path << "\n";
      return 1;
    }
    outp = &file;
  }
  std::ostream& out = *outp;
  using detail::JsonObject;
  using detail::shortest;

  try {
    switch (cfg.command) {
      case Command::eigen: {
        BallSpec s{cfg.n, cfg.kappa, cfg.r};
        const auto e = eigen(s, cfg.method, cfg.tol);
        if (cfg.format == OutputFormat::json) {
          auto o = detail::schema_header("eigen");
          o.field("n", cfg.n)
              .field("kappa", cfg.kappa)
              .field("r", cfg.r)
              .field("lambda", e.lambda)
              .field("alpha", e.alpha)
              .field("method", std::string(to_string(e.method)))
              .field("residual", e.residual)
              .field("bracket_lo", e.bracket_lo)
              .field("bracket_hi", e.bracket_hi);
          out << o.str() << "\n";
        } else if (cfg.format == OutputFormat::csv) {
          out << "n,kappa,r,lambda,alpha,method,residual,bracket_lo,bracket_hi\n"
              << cfg.n << ',' << shortest(cfg.kappa) << ',' << shortest(cfg.r) << ','
              << shortest(e.lambda) << ',' << shortest(e.alpha) << ',' << to_string(e.method)
              << ',' << shortest(e.residual) << ',' << shortest(e.bracket_lo) << ','
              << shortest(e.bracket_hi) << "\n";
        } else {
          out << "lambda_1(B_r^kappa) for n=" << cfg.n << " kappa=" << shortest(cfg.kappa)
              << " r=" << shortest(cfg.r) << "\n"
              << "  lambda   = " << shortest(e.lambda) << "\n"
              << "  alpha    = " << shortest(e.alpha) << "\n"
              << "  method   = " << to_string(e.method) << "\n"
              << "  residual = " << shortest(e.residual) << "\n"
              << "  bracket  = [" << shortest(e.bracket_lo) << ", " << shortest(e.bracket_hi)
              << "]\n";
          if (!e.note.empty()) out << "  note     = " << e.note << "\n";
        }
        return 0;
      }
      case Command::table: {
        if (cfg.r_grid.empty()) throw ParameterError("table requires --r-grid");
        std::vector<std::future<detail::TableRow>> futures;
        for (double r : cfg.r_grid)
          futures.push_back(std::async(std::launch::async, detail::table_row, cfg.n, cfg.kappa, r,
                                       cfg.method, cfg.tol));
        std::vector<detail::TableRow> rows;
        for (auto& f : futures) rows.push_back(f.get());
        const char* names[] = {"r",        "lambda",   "large_r",    "small_r",
                               "bf_lower", "bf_upper", "savo_lower", "savo_upper"};
        auto fields = [](const detail::TableRow& w) {
          return std::vector<double>{w.r,        w.lambda,   w.large_r,    w.small_r,
                                     w.bf_lower, w.bf_upper, w.savo_lower, w.savo_upper};
        };
        if (cfg.format == OutputFormat::json) {
          std::string rows_json = "[";
          for (std::size_t i = 0; i < rows.size(); ++i) {
            JsonObject o;
            auto vals = fields(rows[i]);
            for (int j = 0; j < 8; ++j) o.field(names[j], vals[j]);
            rows_json += (i ? ", " : "") + o.str();
          }
          rows_json += "]";
          auto o = detail::schema_header("table");
          o.field("n", cfg.n).field("kappa", cfg.kappa).raw("rows", rows_json);
          out << o.str() << "\n";
        } else {  // csv and plain share the tabular layout
          for (int j = 0; j < 8; ++j) out << (j ? "," : "") << names[j];
          out << "\n";
          for (const auto& w : rows) {
            auto vals = fields(w);
            for (int j = 0; j < 8; ++j) out << (j ? "," : "") << shortest(vals[j]);
            out << "\n";
          }
        }
        return 0;
      }
      case Command::bounds: {
        BallSpec s{cfg.n, cfg.kappa, cfg.r};
        const auto b = bounds(s);
        if (cfg.format == OutputFormat::json) {
          auto o = detail::schema_header("bounds");
          o.field("n", cfg.n)
              .field("kappa", cfg.kappa)
              .field("r", cfg.r)
              .field("mckean_lower", b.mckean_lower)
              .field("cheng_upper", b.cheng_upper)
              .field("bf_defined", b.bf_defined)
              .field("bf_lower", b.bf_lower)
              .field("bf_upper", b.bf_upper)
              .field("savo_lower", b.savo_lower)
              .field("savo_upper", b.savo_upper);
          out << o.str() << "\n";
        } else {
          out << "mckean_lower,cheng_upper,bf_defined,bf_lower,bf_upper,savo_lower,savo_upper\n"
              << shortest(b.mckean_lower) << ',' << shortest(b.cheng_upper) << ','
              << (b.bf_defined ? "true" : "false") << ',' << shortest(b.bf_lower) << ','
              << shortest(b.bf_upper) << ',' << shortest(b.savo_lower) << ','
              << shortest(b.savo_upper) << "\n";
        }
        return 0;
      }
      case Command::compare: {
        BallSpec s{cfg.n, cfg.kappa, cfg.r};
        const auto measure = detail::make_measure(cfg.measure, cfg.n, cfg.kappa);
        const auto rep = compare(measure, s);
        if (cfg.format == OutputFormat::json) {
          auto o = detail::schema_header("compare");
          o.field("measure", measure.label())
              .field("n", cfg.n)
              .field("kappa", cfg.kappa)
              .field("r", cfg.r)
              .field("lambda_model", rep.lambda_model)
              .field("rayleigh_upper", rep.rayleigh_upper)
              .field("inequality_ok", rep.inequality_ok)
              .field("rigidity_gap", rep.rigidity_gap)
              .field("rho0", rep.rho0);
          out << o.str() << "\n";
        } else {
          out << "measure=" << measure.label() << " n=" << cfg.n << " kappa=" << shortest(cfg.kappa)
              << " r=" << shortest(cfg.r) << "\n"
              << "  lambda_model   = " << shortest(rep.lambda_model) << "\n"
              << "  rayleigh_upper = " << shortest(rep.rayleigh_upper) << "\n"
              << "  inequality_ok  = " << (rep.inequality_ok ? "true" : "false") << "\n"
              << "  rigidity_gap   = " << shortest(rep.rigidity_gap) << "\n"
              << "  rho0           = " << shortest(rep.rho0) << "\n";
        }
        return rep.inequality_ok ? 0 : 1;
      }
      case Command::funk: {
        const auto rep = funk_fundamental_frequency(cfg.n);
        const double klein = klein_fundamental_frequency(cfg.n);
        const double klein_expected = 0.25 * (cfg.n - 1.0) * (cfg.n - 1.0);
        const bool ok = rep.comparison_inequalities_ok && rep.bound <= 1e-4 &&
                        std::abs(klein - klein_expected) <= 1e-3;
        if (cfg.format == OutputFormat::json) {
          auto o = detail::schema_header("funk");
          o.field("n", cfg.n)
              .field("funk_bound", rep.bound)
              .field("tightest_route", rep.tightest_route)
              .field("rayleigh_route", rep.rayleigh_route)
              .field("comparison_route", rep.comparison_route)
              .field("laplace_route", rep.laplace_route)
              .field("comparison_inequalities_ok", rep.comparison_inequalities_ok)
              .field("klein_value", klein)
              .field("klein_expected", klein_expected);
          out << o.str() << "\n";
        } else {
          out << "Funk ball, n=" << cfg.n << "\n"
              << "  fundamental frequency upper bound = " << shortest(rep.bound) << " (route "
              << rep.tightest_route << ")\n"
              << "    rayleigh_route   = " << shortest(rep.rayleigh_route) << "\n"
              << "    comparison_route = " << shortest(rep.comparison_route) << "\n"
              << "    laplace_route    = " << shortest(rep.laplace_route) << "\n"
              << "  Klein contrast: " << shortest(klein) << " (expected "
              << shortest(klein_expected) << ")\n";
        }
        return ok ? 0 : 1;
      }
      case Command::selftest: {
        auto checks = detail::selftest_checks();
        int passed = 0, failed = 0;
        std::string checks_json = "[";
        for (std::size_t i = 0; i < checks.size(); ++i) {
          bool ok = false;
          try {
            ok = checks[i].fn();
          } catch (const std::exception& e) {
            err << checks[i].name << " raised: " << e.what() << "\n";
          }
          (ok ? passed : failed) += 1;
          if (cfg.format == OutputFormat::json) {
            JsonObject o;
            o.field("name", checks[i].name).field("ok", ok);
            checks_json += (i ? ", " : "") + o.str();
          } else {
            out << (ok ? "PASS" : "FAIL") << "  " << checks[i].name << "\n";
          }
        }
        if (cfg.format == OutputFormat::json) {
          auto o = detail::schema_header("selftest");
          o.field("passed", (long)passed).field("failed", (long)failed).raw("checks", checks_json + "]");
          out << o.str() << "\n";
        } else {
          out << passed << " passed, " << failed << " failed\n";
        }
        return failed == 0 ? 0 : 1;
      }
    }
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace hypeig::cli
