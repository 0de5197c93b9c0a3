#include "fracdim2d/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracdim2d/io.hpp"

namespace fracdim2d {

namespace {

// Chain sums are carried as unevaluated double-double pairs and rounded once at
// the end. A chain that skips a node and the saturated chain through it are
// equal in exact arithmetic, so with this accuracy they round to the same
// double and the DP agrees bit-for-bit with the exhaustive search.
struct Wide {
  double hi = 0.0, lo = 0.0;
};

Wide two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

Wide fast_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

Wide abs_diff(double a, double b) {
  Wide d = two_sum(a, -b);
  if (d.hi < 0.0 || (d.hi == 0.0 && d.lo < 0.0)) d = {-d.hi, -d.lo};
  return d;
}

Wide operator+(Wide x, Wide y) {
  const Wide s = two_sum(x.hi, y.hi);
  const Wide t = two_sum(x.lo, y.lo);
  const Wide u = fast_two_sum(s.hi, s.lo + t.hi);
  return fast_two_sum(u.hi, u.lo + t.lo);
}

bool operator>(Wide x, Wide y) { return x.hi > y.hi || (x.hi == y.hi && x.lo > y.lo); }

double rounded(Wide x) { return x.hi + x.lo; }

}  // namespace

VariationResult arzela_variation(const GridSamples& g, VariationOptions opts) {
  const std::size_t m = g.spec().m(), n = g.spec().n();
  constexpr Wide kUnreached{-std::numeric_limits<double>::infinity(), 0.0};
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<Wide> best(m * n, kUnreached);
  std::vector<std::size_t> pred(m * n, kNone);

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t here = i * n + j;
      const double v = g.at(i, j);
      Wide top = kUnreached;
      std::size_t from = kNone;
      auto consider = [&](std::size_t pi, std::size_t pj) {
        const std::size_t p = pi * n + pj;
        if (best[p].hi == kUnreached.hi) return;
        const Wide cand = best[p] + abs_diff(v, g.at(pi, pj));
        if (cand > top) {
          top = cand;
          from = p;
        }
      };
      if (i > 0) consider(i - 1, j);
      if (j > 0) consider(i, j - 1);
      if (i > 0 && j > 0) consider(i - 1, j - 1);
      const bool may_start = !opts.corner_pinned || here == 0;
      if (may_start && Wide{} > top) {
        top = Wide{};
        from = kNone;
      }
      best[here] = top;
      pred[here] = from;
    }
  }

  std::size_t end = m * n - 1;
  if (!opts.corner_pinned) {
    for (std::size_t k = 0; k < m * n; ++k) {
      if (best[k] > best[end] || (!(best[end] > best[k]) && k < end)) end = k;
    }
  }

  VariationResult r;
  r.value = rounded(best[end]);
  for (std::size_t k = end; k != kNone; k = pred[k]) r.path.push_back({k / n, k % n});
  std::reverse(r.path.begin(), r.path.end());
  return r;
}

namespace {

struct ChainSearch {
  const GridSamples& g;
  std::size_t m, n;
  bool pinned;
  Wide best{};

  void extend(std::size_t i, std::size_t j, Wide sum) {
    if ((!pinned || (i == m - 1 && j == n - 1)) && sum > best) best = sum;
    const double v = g.at(i, j);
    for (std::size_t a = i; a < m; ++a) {
      for (std::size_t b = j; b < n; ++b) {
        if (a == i && b == j) continue;
        extend(a, b, sum + abs_diff(g.at(a, b), v));
      }
    }
  }
};

}  // namespace

double arzela_variation_bruteforce(const GridSamples& g, VariationOptions opts) {
  const std::size_t m = g.spec().m(), n = g.spec().n();
  if (m * n > 16) throw SizeError("brute-force variation is limited to m*n <= 16");
  ChainSearch search{g, m, n, opts.corner_pinned};
  if (opts.corner_pinned) {
    search.extend(0, 0, Wide{});
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) search.extend(i, j, Wide{});
    }
  }
  return rounded(search.best);
}

std::string to_json(const VariationResult& r) {
  std::ostringstream os;
  os << "{\"value\":" << io::format_real(r.value) << ",\"path\":[";
  for (std::size_t k = 0; k < r.path.size(); ++k) {
    if (k) os << ',';
    os << '[' << r.path[k][0] << ',' << r.path[k][1] << ']';
  }
  os << "]}";
  return os.str();
}

std::vector<TrendPoint> variation_trend(const std::function<GridSamples(const GridSpec&)>& producer,
                                        const Box& box, std::span<const std::size_t> levels) {
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k] < 2) throw ParameterError("variation levels must be >= 2", "levels");
    if (k > 0 && levels[k] <= levels[k - 1]) {
      throw ParameterError("variation levels must be strictly increasing", "levels");
    }
  }
  std::vector<TrendPoint> out;
  out.reserve(levels.size());
  for (std::size_t level : levels) {
    const GridSamples g = producer(GridSpec(box, level, level));
    out.push_back({level, arzela_variation(g).value});
  }
  return out;
}

std::vector<TrendPoint> variation_trend(const FunctionSource& src, const Box& box,
                                        std::span<const std::size_t> levels) {
  return variation_trend([&](const GridSpec& s) { return sample(src, s); }, box, levels);
}

double trend_log_slope(std::span<const TrendPoint> trend) {
  if (trend.size() < 2) throw FitError("trend slope needs at least two levels");
  double mx = 0.0, my = 0.0;
  for (const auto& t : trend) {
    mx += std::log(static_cast<double>(t.level));
    my += t.value;
  }
  mx /= trend.size();
  my /= trend.size();
  double sxy = 0.0, sxx = 0.0;
  for (const auto& t : trend) {
    const double dx = std::log(static_cast<double>(t.level)) - mx;
    sxy += dx * (t.value - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace fracdim2d
