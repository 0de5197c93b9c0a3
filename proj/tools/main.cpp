#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli.hpp"
#include "fracdim2d/error.hpp"

using namespace fracdim2d;
using namespace fracdim2d::cli;

namespace {

int report_error(const std::string& code, const std::string& message, const std::string& parameter, int exit_code) {
  nlohmann::ordered_json e{{"code", code}, {"message", message}};
  if (!parameter.empty()) e["parameter"] = parameter;
  std::cerr << e.dump() << '\n';
  return exit_code;
}

int exit_code_for(const Error& e) {
  const std::string& k = e.kind();
  if (k == "resolution" || k == "size" || k == "fit") return kExitResolution;
  return kExitUsage;
}

void add_function(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--fn", cfg.fn, "catalog name[:params], csv:<path> or json:<path>");
  sub->add_option("--shift", cfg.shift, "translate the function by dx,dy");
  sub->add_option("--rect", cfg.rect, "a,b,c,d");
  sub->add_option("--grid", cfg.grid, "nodes per axis m,n");
}

void add_operator(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--op", cfg.op, "katugampola | riemann-liouville | hadamard | none");
  sub->add_option("--alpha", cfg.alpha, "order in x (> 0)");
  sub->add_option("--beta", cfg.beta, "order in y (> 0)");
  sub->add_option("--p", cfg.p, "Katugampola exponent in x (> -1)");
  sub->add_option("--q", cfg.q, "Katugampola exponent in y (> -1)");
  sub->add_option("--panels", cfg.panels, "quadrature panels per axis (default 128)");
  sub->add_option("--grading", cfg.grading, "panel grading exponent (>= 1)");
  sub->add_option("--points", cfg.points, "Gauss points per panel (1..8)");
}

void add_output(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.out, "output file (default: standard output)");
  sub->add_option("--format", cfg.format, "csv | json for grid artifacts");
  sub->add_flag("--allow-discontinuous", cfg.allow_discontinuous, "permit discontinuous sources");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed Katugampola fractional integrals, Arzela variation and box-counting dimension"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* integrate = app.add_subcommand("integrate", "evaluate a fractional integral on a grid");
  add_function(integrate, cfg);
  add_operator(integrate, cfg);
  add_output(integrate, cfg);
  integrate->add_option("--M", cfg.M, "sup bound of |f| for the certificate");

  auto* dimension = app.add_subcommand("dimension", "box-counting dimension of a sampled graph");
  add_function(dimension, cfg);
  add_operator(dimension, cfg);
  add_output(dimension, cfg);
  dimension->add_option("--deltas", cfg.deltas, "comma-separated box sizes");
  dimension->add_option("--which", cfg.which, "lower | upper count bound (default lower)");
  dimension->add_option("--counts-from", cfg.counts_from, "CSV of delta,count pairs to fit directly");
  dimension->add_option("--csv", cfg.csv_out, "write the per-delta table here");
  dimension->add_flag("--oracle", cfg.oracle, "add the direct 3-D box count to each row");

  auto* variation = app.add_subcommand("variation", "Arzela variation on a grid or over refinement levels");
  add_function(variation, cfg);
  add_operator(variation, cfg);
  add_output(variation, cfg);
  variation->add_option("--levels", cfg.levels, "nodes per axis for a refinement trend, e.g. 16,32,64");
  variation->add_flag("--corner-pinned", cfg.corner_pinned, "chains from (a,c) to (b,d) only");

  auto* construct = app.add_subcommand("construct", "sample a catalog function or a limit construction");
  add_function(construct, cfg);
  add_output(construct, cfg);
  construct->add_option("--phi", cfg.phi, "generating function for a custom construction over --rect");
  construct->add_option("--depth", cfg.depth, "pieces evaluated exactly (default 24)");

  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("suite", cfg.suite, "semigroup | special-cases | separable | boundedness | "
                                         "bv-preservation | dimension-bounds")
      ->required();
  verify->add_option("--fn", cfg.fns, "functions to check (repeatable)");
  verify->add_option("--g", cfg.gs, "univariate generators for the separable suite (repeatable)");
  verify->add_option("--shift", cfg.shift, "translate the functions by dx,dy");
  verify->add_option("--rect", cfg.rect, "a,b,c,d");
  verify->add_option("--grid", cfg.grid, "nodes per axis m,n");
  verify->add_option("--alpha", cfg.alpha, "order in x (> 0)");
  verify->add_option("--beta", cfg.beta, "order in y (> 0)");
  verify->add_option("--p", cfg.p, "Katugampola exponent in x");
  verify->add_option("--q", cfg.q, "Katugampola exponent in y");
  verify->add_option("--M", cfg.M, "sup bound of |f|");
  verify->add_option("--panels", cfg.panels, "quadrature panels per axis");
  verify->add_option("--grading", cfg.grading, "panel grading exponent");
  verify->add_option("--points", cfg.points, "Gauss points per panel");
  verify->add_option("--levels", cfg.levels, "refinement levels for bv-preservation");
  verify->add_option("--seed", cfg.seed, "random seed for sampled checks");
  verify->add_option("--out", cfg.out, "report file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), "", kExitUsage);
  }

  try {
    if (integrate->parsed()) return cmd_integrate(cfg);
    if (dimension->parsed()) return cmd_dimension(cfg);
    if (variation->parsed()) return cmd_variation(cfg);
    if (construct->parsed()) return cmd_construct(cfg);
    return cmd_verify(cfg);
  } catch (const Error& e) {
    return report_error(e.kind(), e.what(), e.parameter(), exit_code_for(e));
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), "", 1);
  }
}
