#include "fracdim2d/boxdim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracdim2d/io.hpp"

namespace fracdim2d {

namespace {

constexpr double kSlack = 1e-9;

struct CellRange {
  std::size_t lo, hi;  // inclusive node indices
};

// Node index ranges of the delta-cells along one axis of length `len`
// sampled at `count` nodes.
std::vector<CellRange> axis_cells(double len, std::size_t count, double delta, const char* axis) {
  const double h = len / static_cast<double>(count - 1);
  const auto cells = static_cast<std::size_t>(std::ceil(len / delta - kSlack));
  std::vector<CellRange> out;
  out.reserve(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    const double s = static_cast<double>(c) * delta;
    const double e = std::min(static_cast<double>(c + 1) * delta, len);
    const auto lo = static_cast<std::size_t>(std::max(0.0, std::ceil(s / h - kSlack)));
    const auto hi = std::min(static_cast<std::size_t>(std::floor(e / h + kSlack)), count - 1);
    if (hi <= lo) {
      throw ResolutionError(std::string("delta-cell ") + std::to_string(c) + " along " + axis +
                            " holds fewer than two grid nodes; refine the grid or choose another delta");
    }
    out.push_back({lo, hi});
  }
  return out;
}

void check_delta(const GridSpec& spec, double delta) {
  if (!(std::isfinite(delta) && delta > 0.0)) throw ParameterError("delta must be positive", "delta");
  const double w = spec.rect().width(), h = spec.rect().height();
  if (!(delta < std::min(w, h))) {
    throw ResolutionError("delta " + io::format_real(delta) + " is not below the shorter side of the domain");
  }
  if (delta < std::max(spec.dx(), spec.dy()) * (1.0 - kSlack)) {
    throw ResolutionError("delta " + io::format_real(delta) + " is finer than the grid spacing");
  }
}

}  // namespace

BoxCount oscillation_counts(const GridSamples& g, double delta) {
  const GridSpec& spec = g.spec();
  check_delta(spec, delta);
  const auto cx = axis_cells(spec.rect().width(), spec.m(), delta, "x");
  const auto cy = axis_cells(spec.rect().height(), spec.n(), delta, "y");

  CompensatedSum lower, osc;
  for (const auto& rx : cx) {
    for (const auto& ry : cy) {
      double lo = g.at(rx.lo, ry.lo), hi = lo;
      for (std::size_t i = rx.lo; i <= rx.hi; ++i) {
        for (std::size_t j = ry.lo; j <= ry.hi; ++j) {
          const double v = g.at(i, j);
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      const double r = (hi - lo) / delta;
      lower.add(std::max(r, 1.0));
      osc.add(r);
    }
  }

  BoxCount bc;
  bc.delta = delta;
  bc.cells_x = cx.size();
  bc.cells_y = cy.size();
  bc.lower_sum = lower.value();
  bc.upper_sum = 2.0 * static_cast<double>(cx.size() * cy.size()) + osc.value();
  bc.n_lower = static_cast<std::int64_t>(std::ceil(bc.lower_sum * (1.0 - 1e-12)));
  bc.n_upper = static_cast<std::int64_t>(std::floor(bc.upper_sum * (1.0 + 1e-12)));
  return bc;
}

std::int64_t boxcount_bruteforce_3d(const GridSamples& g, double delta) {
  const GridSpec& spec = g.spec();
  if ((spec.m() - 1) * (spec.n() - 1) > (std::size_t{1} << 20)) {
    throw SizeError("direct 3-D box count is limited to 2^20 grid cells");
  }
  check_delta(spec, delta);
  const auto cx = axis_cells(spec.rect().width(), spec.m(), delta, "x");
  const auto cy = axis_cells(spec.rect().height(), spec.n(), delta, "y");

  const double z0 = g.min();
  const auto top_cube = static_cast<std::int64_t>(
      std::max(0.0, std::ceil((g.max() - z0) / delta) - 1.0));

  std::int64_t total = 0;
  std::vector<char> hit(static_cast<std::size_t>(top_cube) + 1);
  for (const auto& rx : cx) {
    for (const auto& ry : cy) {
      std::fill(hit.begin(), hit.end(), 0);
      for (std::size_t i = rx.lo; i < rx.hi; ++i) {
        for (std::size_t j = ry.lo; j < ry.hi; ++j) {
          const double v[4] = {g.at(i, j), g.at(i + 1, j), g.at(i, j + 1), g.at(i + 1, j + 1)};
          const double lo = *std::min_element(v, v + 4);
          const double hi = *std::max_element(v, v + 4);
          // Candidate cube range with one cube of margin; the exact test below decides.
          const auto k_lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor((lo - z0) / delta)) - 1);
          const auto k_hi = std::min<std::int64_t>(top_cube, static_cast<std::int64_t>(std::floor((hi - z0) / delta)) + 1);
          for (std::int64_t k = k_lo; k <= k_hi; ++k) {
            const double bottom = z0 + static_cast<double>(k) * delta;
            const double top = bottom + delta;
            bool meets;
            if (lo == hi) {
              meets = bottom <= lo && (lo < top || k == top_cube);
            } else {
              meets = lo < top && hi > bottom;
            }
            if (meets) hit[static_cast<std::size_t>(k)] = 1;
          }
        }
      }
      total += std::count(hit.begin(), hit.end(), 1);
    }
  }
  return total;
}

CountKind parse_count_kind(const std::string& s) {
  if (s == "lower") return CountKind::Lower;
  if (s == "upper") return CountKind::Upper;
  throw ParameterError("count kind must be 'lower' or 'upper'", "which");
}

const char* to_string(CountKind k) { return k == CountKind::Lower ? "lower" : "upper"; }

DimensionFit fit_counts(std::span<const double> deltas, std::span<const double> counts, CountKind which) {
  if (deltas.size() != counts.size()) throw ParameterError("deltas and counts differ in length", "deltas");
  if (deltas.size() < 3) throw FitError("dimension fit needs at least three scales");
  std::vector<std::size_t> order(deltas.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (!(deltas[k] > 0.0) || !(counts[k] > 0.0)) {
      throw ParameterError("deltas and counts must be positive", "deltas");
    }
    order[k] = k;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return deltas[l] > deltas[r]; });

  DimensionFit fit;
  fit.which = which;
  const double n = static_cast<double>(deltas.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k : order) {
    fit.deltas.push_back(deltas[k]);
    fit.counts.push_back(counts[k]);
    mx += -std::log(deltas[k]);
    my += std::log(counts[k]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < fit.deltas.size(); ++k) {
    const double dx = -std::log(fit.deltas[k]) - mx;
    const double dy = std::log(fit.counts[k]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw FitError("dimension fit needs distinct scales");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

DimensionFit dimension_fit(const GridSamples& g, std::span<const double> deltas, CountKind which) {
  std::vector<double> used, counts, dropped;
  for (double d : deltas) {
    try {
      const BoxCount bc = oscillation_counts(g, d);
      used.push_back(d);
      counts.push_back(static_cast<double>(which == CountKind::Lower ? bc.n_lower : bc.n_upper));
    } catch (const ResolutionError&) {
      dropped.push_back(d);
    }
  }
  if (used.size() < 3) {
    throw FitError("only " + std::to_string(used.size()) + " scales satisfy the resolution rule; need 3");
  }
  DimensionFit fit = fit_counts(used, counts, which);
  fit.dropped = std::move(dropped);
  return fit;
}

std::vector<double> default_deltas(const GridSpec& spec) {
  const double floor_delta = 8.0 * std::max(spec.dx(), spec.dy()) * (1.0 - kSlack);
  std::vector<double> out;
  for (double d = std::min(spec.rect().width(), spec.rect().height()) / 4.0; d >= floor_delta; d /= 2.0) {
    out.push_back(d);
  }
  return out;
}

std::string to_json(const DimensionFit& fit, std::span<const BoxCount> counts) {
  std::ostringstream os;
  os << "{\"which\":\"" << to_string(fit.which) << "\",\"slope\":" << io::format_real(fit.slope)
     << ",\"intercept\":" << io::format_real(fit.intercept) << ",\"r_squared\":" << io::format_real(fit.r_squared)
     << ",\"points\":[";
  for (std::size_t k = 0; k < fit.deltas.size(); ++k) {
    if (k) os << ',';
    os << "{\"delta\":" << io::format_real(fit.deltas[k]) << ",\"count\":" << io::format_real(fit.counts[k]);
    for (const auto& bc : counts) {
      if (bc.delta == fit.deltas[k]) {
        os << ",\"n_lower\":" << bc.n_lower << ",\"n_upper\":" << bc.n_upper;
        break;
      }
    }
    os << '}';
  }
  os << "],\"dropped\":[";
  for (std::size_t k = 0; k < fit.dropped.size(); ++k) {
    if (k) os << ',';
    os << io::format_real(fit.dropped[k]);
  }
  os << "]}";
  return os.str();
}

}  // namespace fracdim2d
