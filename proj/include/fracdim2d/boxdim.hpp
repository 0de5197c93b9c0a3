#pragma once

// Box-counting estimates for graphs of sampled bivariate functions.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracdim2d/core.hpp"

namespace fracdim2d {

/// Oscillation bounds on the number of delta-cubes meeting the graph.
/// Cells are [a + i delta, a + (i+1) delta] (the last one partial), and the
/// oscillation R of a cell is max - min over the grid nodes in the closed
/// cell. n_lower = ceil(sum max(R/delta, 1)); n_upper = floor(2 m n + sum R/delta).
struct BoxCount {
  double delta = 0.0;
  std::size_t cells_x = 0, cells_y = 0;
  double lower_sum = 0.0;  // sum max(R/delta, 1)
  double upper_sum = 0.0;  // 2 m n + sum R/delta
  std::int64_t n_lower = 0;
  std::int64_t n_upper = 0;
};

/// Throws ResolutionError unless max(dx, dy) <= delta < min(width, height)
/// and every cell holds at least two nodes per axis.
BoxCount oscillation_counts(const GridSamples& g, double delta);

/// Direct count of delta-cubes in a z-mesh anchored at min f that meet the
/// piecewise-bilinear interpolant's range over each grid sub-cell. Uses the
/// same x/y cells as oscillation_counts. Throws SizeError when the grid has
/// more than 2^20 grid cells.
std::int64_t boxcount_bruteforce_3d(const GridSamples& g, double delta);

enum class CountKind { Lower, Upper };

CountKind parse_count_kind(const std::string& s);
const char* to_string(CountKind k);

struct DimensionFit {
  CountKind which = CountKind::Lower;
  std::vector<double> deltas;         // used, descending
  std::vector<double> counts;
  std::vector<double> dropped;        // rejected for resolution
  double slope = 0.0;                 // dimension estimate
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least squares of log N(delta) against log(1/delta). Needs at least three
/// points, else FitError.
DimensionFit fit_counts(std::span<const double> deltas, std::span<const double> counts, CountKind which);

/// oscillation_counts over `deltas` then fit_counts. Deltas failing the
/// resolution rule are recorded in `dropped`.
DimensionFit dimension_fit(const GridSamples& g, std::span<const double> deltas, CountKind which);

/// min(width, height)/4 halved while delta >= 8 max(dx, dy).
std::vector<double> default_deltas(const GridSpec& spec);

std::string to_json(const DimensionFit& fit, std::span<const BoxCount> counts);

}  // namespace fracdim2d
