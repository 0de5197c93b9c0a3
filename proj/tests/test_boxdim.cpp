#include <doctest.h>

#include <cmath>
#include <random>

#include "fracdim2d/boxdim.hpp"
#include "fracdim2d/constructions.hpp"
#include "fracdim2d/fracint.hpp"

using namespace fracdim2d;

namespace {

const Box kUnit(0, 1, 0, 1);

// Independent cube count for a graph sampled on a grid: walks z-layers of
// every delta-cell directly from the node values (no shared helpers).
std::int64_t naive_cubes(const GridSamples& g, double delta) {
  const auto& s = g.spec();
  const int cx = static_cast<int>(std::ceil(s.rect().width() / delta - 1e-9));
  const int cy = static_cast<int>(std::ceil(s.rect().height() / delta - 1e-9));
  const double z0 = g.min();
  const int layers = std::max(1, static_cast<int>(std::ceil((g.max() - z0) / delta)));
  std::int64_t total = 0;
  for (int a = 0; a < cx; ++a)
    for (int b = 0; b < cy; ++b)
      for (int k = 0; k < layers; ++k) {
        const double bot = z0 + k * delta, top = bot + delta;
        bool hit = false;
        for (std::size_t i = 0; i + 1 < s.m() && !hit; ++i)
          for (std::size_t j = 0; j + 1 < s.n() && !hit; ++j) {
            const double x0 = s.x(i) - s.rect().a, x1 = s.x(i + 1) - s.rect().a;
            const double y0 = s.y(j) - s.rect().c, y1 = s.y(j + 1) - s.rect().c;
            // sub-cell inside the delta-cell?
            if (x0 < a * delta - 1e-12 || x1 > (a + 1) * delta + 1e-12) continue;
            if (y0 < b * delta - 1e-12 || y1 > (b + 1) * delta + 1e-12) continue;
            const double v[] = {g.at(i, j), g.at(i + 1, j), g.at(i, j + 1), g.at(i + 1, j + 1)};
            const double lo = *std::min_element(v, v + 4), hi = *std::max_element(v, v + 4);
            hit = lo == hi ? (bot <= lo && (lo < top || k == layers - 1)) : (lo < top && hi > bot);
          }
        total += hit;
      }
  return total;
}

}  // namespace

TEST_CASE("flat and tilted planes") {
  const GridSamples zero = sample(*catalog("constant", {0.0}), GridSpec(kUnit, 17, 17));
  const BoxCount z = oscillation_counts(zero, 0.25);
  CHECK(z.cells_x == 4);
  CHECK(z.cells_y == 4);
  CHECK(z.n_lower == 16);
  CHECK(z.n_upper == 32);
  CHECK(boxcount_bruteforce_3d(zero, 0.25) == 16);

  const GridSamples x = sample(*catalog("coord-x"), GridSpec(kUnit, 17, 17));
  const BoxCount bx = oscillation_counts(x, 0.25);
  CHECK(bx.n_lower == 16);
  CHECK(boxcount_bruteforce_3d(x, 0.25) == 16);
  CHECK(naive_cubes(x, 0.25) == 16);
}

TEST_CASE("cell counts satisfy the lemma's bracketing") {
  const GridSamples g = sample(*catalog("plane"), GridSpec(Box(0, 1, 0, 0.9), 101, 91));
  for (double d : {0.3, 0.2, 0.15, 0.1}) {
    const BoxCount bc = oscillation_counts(g, d);
    CHECK(bc.cells_x >= 1.0 / d - 1e-9);
    CHECK(bc.cells_x <= 1 + 1.0 / d);
    CHECK(bc.cells_y >= 0.9 / d - 1e-9);
    CHECK(bc.cells_y <= 1 + 0.9 / d);
  }
}

TEST_CASE("lower bound never exceeds upper bound") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> shift(-3.0, 3.0);
  const char* names[] = {"plane", "product", "sin-x", "coord-x", "weierstrass"};
  for (int t = 0; t < 100; ++t) {
    const auto f = std::make_shared<ShiftedSource>(catalog(names[t % 5]), shift(rng), shift(rng));
    const GridSamples g = sample(*f, GridSpec(Box(1, 2, 1, 2), 33, 33));
    for (double d : {0.25, 0.125}) {
      const BoxCount bc = oscillation_counts(g, d);
      CHECK(bc.n_lower <= bc.n_upper);
    }
  }
}

TEST_CASE("sandwich: oscillation bounds bracket the direct 3-D count") {
  for (const auto& e : catalog_entries()) {
    CAPTURE(e.name);
    const Box box = e.domain.width() < 1e6 ? e.domain : Box(1, 2, 1, 2);
    const GridSamples g = sample(*catalog(e.name), GridSpec(box, 65, 65));
    const double side = std::min(box.width(), box.height());
    for (double d : {side / 4, side / 8, side / 16, side / 32}) {
      const BoxCount bc = oscillation_counts(g, d);
      const std::int64_t direct = boxcount_bruteforce_3d(g, d);
      CHECK(bc.n_lower <= direct);
      CHECK(direct <= bc.n_upper);
    }
  }
}

TEST_CASE("direct count agrees with a naive walk") {
  for (const char* name : {"product", "weierstrass", "t-phi-1"}) {
    const auto f = catalog(name);
    const Box box = f->domain().width() < 1e6 ? f->domain() : Box(1, 2, 1, 2);
    const GridSamples g = sample(*f, GridSpec(box, 17, 17));
    for (double d : {0.25, 0.125}) CHECK(boxcount_bruteforce_3d(g, d) == naive_cubes(g, d));
  }
}

TEST_CASE("resolution and size preconditions") {
  const GridSamples g = sample(*catalog("plane"), GridSpec(Box(1, 2, 1, 2), 9, 9));
  CHECK_THROWS_AS(oscillation_counts(g, 1.0), ResolutionError);
  CHECK_THROWS_AS(oscillation_counts(g, 0.05), ResolutionError);
  CHECK_THROWS_AS(oscillation_counts(g, 0.3), ResolutionError);  // remainder strip has one node column
  CHECK_THROWS_AS(oscillation_counts(g, -0.1), ParameterError);
  const GridSamples big = sample(*catalog("plane"), GridSpec(Box(1, 2, 1, 2), 1026, 1026));
  CHECK_THROWS_AS(boxcount_bruteforce_3d(big, 0.25), SizeError);
}

TEST_CASE("fit of an exact power law") {
  const std::vector<double> d{0.5, 0.25, 0.125, 0.0625}, n{4, 16, 64, 256};
  const DimensionFit f = fit_counts(d, n, CountKind::Lower);
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-14));
  const std::vector<double> d2{0.125, 0.5, 0.25}, n2{64, 4, 16};
  const DimensionFit g = fit_counts(d2, n2, CountKind::Upper);
  CHECK(g.deltas == std::vector<double>{0.5, 0.25, 0.125});
  CHECK_THROWS_AS(fit_counts(std::vector<double>{0.5, 0.25}, std::vector<double>{4, 16}, CountKind::Lower),
                  FitError);
}

TEST_CASE("default deltas") {
  const auto d = default_deltas(GridSpec(Box(1, 2, 1, 2), 1025, 1025));
  REQUIRE(d.size() == 6);
  CHECK(d.front() == 0.25);
  CHECK(d.back() == 1.0 / 128);
}

TEST_CASE("dimension fit drops unresolved scales") {
  const GridSamples g = sample(*catalog("plane"), GridSpec(Box(1, 2, 1, 2), 65, 65));
  const std::vector<double> d{0.25, 0.125, 0.0625, 0.001};
  const DimensionFit f = dimension_fit(g, d, CountKind::Lower);
  CHECK(f.dropped == std::vector<double>{0.001});
  CHECK(f.deltas.size() == 3);
  CHECK_THROWS_AS(dimension_fit(g, std::vector<double>{0.25, 0.001, 0.0001}, CountKind::Lower), FitError);
}

TEST_CASE("dimension estimates") {
  const GridSpec big(Box(1, 2, 1, 2), 1025, 1025);
  const auto d = default_deltas(big);
  const DimensionFit plane = dimension_fit(sample(*catalog("plane"), big), d, CountKind::Lower);
  CHECK(plane.slope >= 1.9);
  CHECK(plane.slope <= 2.1);

  const GridSpec mid(Box(1, 2, 1, 2), 513, 513);
  const auto w = catalog("weierstrass");
  const DimensionFit raw = dimension_fit(sample(*w, mid), default_deltas(mid), CountKind::Lower);
  CHECK(raw.slope >= 2.35);
  CHECK(raw.slope <= 2.65);
  CHECK(raw.slope <= 3 - 0.5 + 0.2);

  QuadratureSpec q;
  q.panels = 128;
  const DimensionFit integ =
      dimension_fit(katugampola_2d_grid(*w, mid, FracOrder(0.5, 0.5, 0, 0), q), default_deltas(mid), CountKind::Lower);
  CHECK(integ.slope <= 2.7);
  CHECK(integ.slope <= raw.slope);
  CHECK(integ.slope >= 1.9);

  for (const char* name : {"product", "sin-x", "paper-phi-1", "paper-phi-2", "t-phi-1", "t-phi-2"}) {
    CAPTURE(name);
    const auto f = catalog(name);
    const Box box = f->domain().width() < 1e6 ? f->domain() : Box(1, 2, 1, 2);
    const GridSpec spec(box, 513, 513);
    const DimensionFit fit = dimension_fit(sample(*f, spec), default_deltas(spec), CountKind::Lower);
    CHECK(fit.slope >= 1.9);
    CHECK(fit.slope <= 2.2);
  }
}
