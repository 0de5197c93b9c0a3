#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracdim2d/core.hpp"
#include "fracdim2d/quadrature.hpp"

namespace fracdim2d::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResolution = 3;
inline constexpr int kExitVerify = 4;

struct RunConfig {
  std::string subcommand;
  std::string suite;

  std::string fn;
  std::vector<std::string> fns;  // verify: repeatable --fn
  std::vector<std::string> gs;   // verify separable: repeatable --g
  std::string phi;
  std::string shift;
  std::string rect;
  std::string grid;
  std::string op;
  std::string deltas;
  std::string counts_from;
  std::string which = "lower";
  std::string levels;
  std::string out;
  std::string format;
  std::string csv_out;

  std::optional<double> alpha, beta, p, q, M;
  int panels = 128;
  double grading = 1.0;
  int points = 4;
  int depth = 24;
  std::uint64_t seed = 1;
  bool oracle = false;
  bool corner_pinned = false;
  bool allow_discontinuous = false;
};

std::vector<double> parse_list(const std::string& text, const std::string& parameter);
QuadratureSpec quadrature(const RunConfig& cfg);

/// Source named by cfg.fn (or `spec`), translated by --shift when given.
SourcePtr resolve_source(const RunConfig& cfg, const std::string& spec);
/// --rect, falling back to the source domain when it is bounded.
Box resolve_box(const RunConfig& cfg, const FunctionSource* src);
GridSpec resolve_grid(const RunConfig& cfg, const Box& box, std::size_t default_nodes);

/// Applies cfg.op ("none" samples the function) on the grid.
GridSamples apply_operator(const RunConfig& cfg, const FunctionSource& src, const GridSpec& spec);

/// Writes `artifact` to --out (and `summary` to stdout) or, without --out,
/// the artifact to stdout and the summary to stderr.
void emit(const RunConfig& cfg, const std::string& artifact, const std::string& summary);
std::string grid_artifact(const RunConfig& cfg, const GridSamples& g);

int cmd_integrate(const RunConfig& cfg);
int cmd_dimension(const RunConfig& cfg);
int cmd_variation(const RunConfig& cfg);
int cmd_construct(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);

}  // namespace fracdim2d::cli
