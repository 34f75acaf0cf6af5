#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hypeig/cli.hpp"

namespace {

hypeig::cli::Command parse_command(const std::string& s) {
  using hypeig::cli::Command;
  if (s == "eigen") return Command::eigen;
  if (s == "table") return Command::table;
  if (s == "bounds") return Command::bounds;
  if (s == "compare") return Command::compare;
  if (s == "funk") return Command::funk;
  if (s == "selftest") return Command::selftest;
  throw CLI::ValidationError("--command", "unknown command '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypeig: first Dirichlet eigenvalues of hyperbolic geodesic balls,\n"
               "bound/asymptotic tables, metric-measure comparisons, Funk model checks"};

  std::string command = "eigen";
  std::string method, format = "plain", out_path, measure = "hyperbolic", r_grid;
  hypeig::cli::RunConfig cfg;

  app.add_option("--command", command, "eigen|table|bounds|compare|funk|selftest")
      ->required();
  app.add_option("--n", cfg.n, "space dimension (>= 2)");
  app.add_option("--kappa", cfg.kappa, "curvature scale (curvature = -kappa^2)");
  app.add_option("--r", cfg.r, "geodesic radius");
  app.add_option("--r-grid", r_grid, "radius grid start:stop:count,log|lin (table)");
  app.add_option("--method", method, "hypergeom_root|s_recursion|ode_shooting");
  app.add_option("--format", format, "json|csv|plain");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--measure", measure, "hyperbolic|euclidean|funk or a CSV path (compare)");

  try {
    app.parse(argc, argv);
    cfg.command = parse_command(command);
    if (!r_grid.empty()) cfg.r_grid = hypeig::cli::parse_grid(r_grid);
    if (!method.empty()) {
      if (method == "hypergeom_root") cfg.method = hypeig::EigenMethod::hypergeom_root;
      else if (method == "s_recursion") cfg.method = hypeig::EigenMethod::s_recursion;
      else if (method == "ode_shooting") cfg.method = hypeig::EigenMethod::ode_shooting;
      else throw CLI::ValidationError("--method", "unknown method '" + method + "'");
    }
    if (format == "json") cfg.format = hypeig::cli::OutputFormat::json;
    else if (format == "csv") cfg.format = hypeig::cli::OutputFormat::csv;
    else if (format == "plain") cfg.format = hypeig::cli::OutputFormat::plain;
    else throw CLI::ValidationError("--format", "unknown format '" + format + "'");
    cfg.out_path = out_path;
    cfg.measure = measure;
    if (const char* tol = std::getenv("HYPEIG_TOL")) {
      cfg.tol = std::strtod(tol, nullptr);
      if (!(cfg.tol > 0.0 && cfg.tol < 1.0)) {
        std::cerr << "HYPEIG_TOL must be a relative tolerance in (0, 1)\n";
        return 2;
      }
    }
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags -> usage error
  } catch (const hypeig::ParameterError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  return hypeig::cli::run(cfg, std::cout, std::cerr);
}
