#pragma once

// GridSamples serialization. CSV: header `x,y,value`, one row per node in
// row-major order, 17 significant digits. JSON: {rect:{a,b,c,d}, m, n, values}.

#include <iosfwd>
#include <string>

#include "fracdim2d/core.hpp"

namespace fracdim2d::io {

/// Shortest-round-trip-safe decimal form (%.17g).
std::string format_real(double v);

void write_csv(std::ostream& os, const GridSamples& g);
GridSamples read_csv(std::istream& is);

void write_json(std::ostream& os, const GridSamples& g);
GridSamples read_json(std::istream& is);

/// Dispatch on the extension: `.json` is JSON, anything else CSV.
void save(const std::string& path, const GridSamples& g);
GridSamples load(const std::string& path);

}  // namespace fracdim2d::io
