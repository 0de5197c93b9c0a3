#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "fracdim2d/constructions.hpp"
#include "fracdim2d/fracint.hpp"
#include "fracdim2d/variation.hpp"

using namespace fracdim2d;

namespace {

GridSamples grid(std::size_t m, std::size_t n, std::vector<double> v) {
  return GridSamples(GridSpec(Box(0, 1, 0, 1), m, n), std::move(v));
}

void check_path(const GridSamples& g, const VariationResult& r) {
  double sum = 0.0;
  for (std::size_t k = 1; k < r.path.size(); ++k) {
    const auto [i0, j0] = r.path[k - 1];
    const auto [i1, j1] = r.path[k];
    CHECK(i1 >= i0);
    CHECK(j1 >= j0);
    CHECK(i1 - i0 <= 1);
    CHECK(j1 - j0 <= 1);
    CHECK(i1 + j1 > i0 + j0);
    sum += std::fabs(g.at(i1, j1) - g.at(i0, j0));
  }
  CHECK(sum == doctest::Approx(r.value).epsilon(1e-14).scale(1.0));
}

}  // namespace

TEST_CASE("small examples") {
  const GridSamples x = grid(2, 2, {0, 1, 1, 0});
  const VariationResult r = arzela_variation(x);
  CHECK(r.value == 2.0);
  CHECK(arzela_variation_bruteforce(x) == 2.0);
  // Ties prefer the predecessor (i-1, j), so (1,1) is reached from (0,1).
  CHECK(r.path == std::vector<GridIndex>{{0, 0}, {0, 1}, {1, 1}});
  check_path(x, r);

  const GridSamples c = grid(3, 4, std::vector<double>(12, 2.5));
  CHECK(arzela_variation(c).value == 0.0);
  CHECK(arzela_variation_bruteforce(c) == 0.0);

  const GridSamples plane = sample(*catalog("plane"), GridSpec(Box(0, 1, 0, 1), 3, 3));
  CHECK(arzela_variation(plane).value == 2.0);
  CHECK(arzela_variation_bruteforce(plane) == 2.0);
}

TEST_CASE("two identical rows reduce to the row's total variation") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> u(-8, 8);
  for (int t = 0; t < 50; ++t) {
    const std::size_t k = 2 + t % 6;
    std::vector<double> row(k), v;
    for (double& r : row) r = u(rng);
    for (int rep = 0; rep < 2; ++rep) v.insert(v.end(), row.begin(), row.end());
    double tv = 0.0;
    for (std::size_t j = 1; j < k; ++j) tv += std::fabs(row[j] - row[j - 1]);
    const GridSamples g = grid(2, k, v);
    CHECK(arzela_variation(g).value == tv);
    CHECK(arzela_variation_bruteforce(g) == tv);
  }
}

TEST_CASE("dynamic program equals brute force on random grids") {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  // Dyadic values keep every partial sum exact, so equality is bitwise.
  std::uniform_int_distribution<int> num(-1024, 1024);
  std::uniform_real_distribution<double> real(-1.0, 1.0);
  const std::pair<std::size_t, std::size_t> shapes[] = {{2, 2}, {2, 3}, {3, 2}, {2, 4}, {4, 2}, {3, 3},
                                                        {2, 5}, {5, 2}, {2, 6}, {6, 2}, {3, 4}, {4, 3}};
  int cases = 0;
  for (int seed = 0; seed < 600; ++seed) {
    const auto [m, n] = shapes[seed % std::size(shapes)];
    std::vector<double> dyadic(m * n), generic(m * n);
    for (double& v : dyadic) v = num(rng) / 64.0;
    for (double& v : generic) v = real(rng);
    for (bool pinned : {false, true}) {
      VariationOptions o;
      o.corner_pinned = pinned;
      const GridSamples g = grid(m, n, dyadic);
      const VariationResult r = arzela_variation(g, o);
      CHECK(r.value == arzela_variation_bruteforce(g, o));
      check_path(g, r);
      const GridSamples h = grid(m, n, generic);
      CHECK(arzela_variation(h, o).value == arzela_variation_bruteforce(h, o));
    }
    ++cases;
  }
  CHECK(cases >= 500);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 10.0);
}

TEST_CASE("corner-pinned and unrestricted values agree") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> num(-100, 100);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> v(20);
    for (double& x : v) x = num(rng);
    const GridSamples g = grid(4, 5, v);
    VariationOptions pinned;
    pinned.corner_pinned = true;
    const VariationResult r = arzela_variation(g, pinned);
    CHECK(r.value == arzela_variation(g).value);
    CHECK(r.path.front() == GridIndex{0, 0});
    CHECK(r.path.back() == GridIndex{3, 4});
  }
}

TEST_CASE("inserting a grid line never lowers the variation") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> num(-50, 50);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 3 + t % 3, n = 3 + (t / 3) % 3;
    std::vector<double> v(m * n);
    for (double& x : v) x = num(rng);
    const double before = arzela_variation(grid(m, n, v)).value;
    const std::size_t at = 1 + t % (m - 1);  // new row between at-1 and at
    std::vector<double> w;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == at)
        for (std::size_t j = 0; j < n; ++j) w.push_back(num(rng));
      for (std::size_t j = 0; j < n; ++j) w.push_back(v[i * n + j]);
    }
    CHECK(arzela_variation(grid(m + 1, n, w)).value >= before);
  }
}

TEST_CASE("monotone samples give the total rise") {
  const GridSamples g = sample(*catalog("plane"), GridSpec(Box(1, 2, 1, 3), 17, 9));
  CHECK(arzela_variation(g).value == doctest::Approx(g.at(16, 8) - g.at(0, 0)).epsilon(1e-15));
}

TEST_CASE("brute force refuses large grids") {
  CHECK_THROWS_AS(arzela_variation_bruteforce(grid(3, 6, std::vector<double>(18, 0.0))), SizeError);
}

TEST_CASE("variation trends") {
  const std::vector<std::size_t> levels{4, 8, 16, 32};
  for (const auto& t : variation_trend(*catalog("constant"), Box(1, 2, 1, 2), levels)) CHECK(t.value == 0.0);
  for (const auto& t : variation_trend(*catalog("plane"), Box(1, 2, 1, 2), levels))
    CHECK(t.value == doctest::Approx(2.0).epsilon(1e-15));

  const std::vector<std::size_t> fine{16, 32, 64, 128, 256, 512, 1024};
  const auto tr = variation_trend(*catalog("t-phi-1"), Box(0, 1, 0, 1), fine);
  for (std::size_t k = 1; k < tr.size(); ++k) CHECK(tr[k].value > tr[k - 1].value);
  CHECK(trend_log_slope(tr) > 0.0);

  const std::vector<std::size_t> bad{8, 8};
  CHECK_THROWS_AS(variation_trend(*catalog("plane"), Box(1, 2, 1, 2), bad), ParameterError);
}

TEST_CASE("bounded variation is preserved by the integral") {
  QuadratureSpec q;
  q.panels = 64;
  const auto f = catalog("product");
  const std::vector<std::size_t> levels{32, 64, 128};
  const auto tr = variation_trend(
      [&](const GridSpec& s) { return katugampola_2d_grid(*f, s, FracOrder(0.5, 0.5, 0, 0), q); }, Box(1, 2, 1, 2),
      levels);
  CHECK(std::fabs(tr[2].value / tr[1].value - 1) <= 0.05);
}

TEST_CASE("json form") {
  VariationResult r{2.5, {{0, 0}, {1, 1}}};
  CHECK(to_json(r) == "{\"value\":2.5,\"path\":[[0,0],[1,1]]}");
}
