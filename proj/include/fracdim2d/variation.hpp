#pragma once

// Arzela-sense variation of sampled bivariate functions: the largest sum of
// |f(P_{k+1}) - f(P_k)| over chains of grid nodes that are nondecreasing in
// both coordinates.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fracdim2d/core.hpp"

namespace fracdim2d {

using GridIndex = std::array<std::size_t, 2>;

struct VariationResult {
  double value = 0.0;
  std::vector<GridIndex> path;  // saturated chain attaining value
};

struct VariationOptions {
  /// Restrict chains to start at (0,0) and end at (m-1,n-1), as in the
  /// literal definition with x_0 = a, x_m = b.
  bool corner_pinned = false;
};

/// Dynamic program over saturated chains: each step moves one node in x,
/// in y, or in both. Ties prefer the predecessor (i-1,j), then (i,j-1), then
/// (i-1,j-1); among equal end cells the first in row-major order wins.
VariationResult arzela_variation(const GridSamples& g, VariationOptions opts = {});

/// Exhaustive maximum over every monotone chain (not only saturated ones).
/// Throws SizeError when m*n > 16.
double arzela_variation_bruteforce(const GridSamples& g, VariationOptions opts = {});

/// {"value": v, "path": [[i,j], ...]}
std::string to_json(const VariationResult& r);

struct TrendPoint {
  std::size_t level = 0;  // nodes per axis
  double value = 0.0;
};

/// arzela_variation of `producer(GridSpec(box, L, L))` for each level L.
/// Levels must be strictly increasing and >= 2.
std::vector<TrendPoint> variation_trend(const std::function<GridSamples(const GridSpec&)>& producer,
                                        const Box& box, std::span<const std::size_t> levels);
/// Variation of samples of `src` itself.
std::vector<TrendPoint> variation_trend(const FunctionSource& src, const Box& box,
                                        std::span<const std::size_t> levels);

/// Least-squares slope of value against log(level).
double trend_log_slope(std::span<const TrendPoint> trend);

}  // namespace fracdim2d
