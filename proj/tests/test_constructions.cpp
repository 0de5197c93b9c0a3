#include <doctest.h>

#include <cmath>
#include <random>

#include "fracdim2d/boxdim.hpp"
#include "fracdim2d/constructions.hpp"

using namespace fracdim2d;

TEST_CASE("sequence points and affine maps") {
  CHECK(sequence_point(0, 0, 1) == 0.0);
  CHECK(sequence_point(1, 0, 1) == 0.5);
  CHECK(sequence_point(2, 0, 1) == 0.75);
  CHECK(sequence_point(3, 2, 4) == 3.75);
  CHECK(psi_n(0.5, 2, 0, 1) == 0.0);
  CHECK(psi_n(0.75, 2, 0, 1) == 0.5);
  CHECK(psi_n(0.6, 2, 0, 1) == doctest::Approx(2 * 0.6 - 1).epsilon(1e-15));
  for (double x : {0.0, 0.1, 0.37, 0.5}) CHECK(psi_n(x, 1, 0, 1) == doctest::Approx(x).epsilon(1e-15));
  CHECK_THROWS_AS(psi_n(0.3, 2, 0, 1), DomainError);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2, 2), w(0.1, 3);
  std::uniform_int_distribution<int> n(1, 20);
  for (int t = 0; t < 200; ++t) {
    const double a = u(rng), b = a + w(rng);
    const int k = n(rng);
    const double a0 = a, a1 = sequence_point(1, a, b);
    CHECK(psi_n(sequence_point(k - 1, a, b), k, a, b) == doctest::Approx(a0).scale(b - a).epsilon(1e-9));
    CHECK(psi_n(sequence_point(k, a, b), k, a, b) == doctest::Approx(a1).scale(b - a).epsilon(1e-9));
  }
}

TEST_CASE("catalog values") {
  CHECK((*catalog("constant", {1.0}))(0.3, -7.0) == 1.0);
  CHECK((*catalog("constant"))(5.0, 5.0) == 1.0);
  const double phi1 = (*catalog("paper-phi-1"))(0.25, 1.0);
  CHECK(phi1 == doctest::Approx(0.25 * -0.25 * std::sin(1.0)).epsilon(1e-15));
  CHECK(phi1 == doctest::Approx(-0.0525932).epsilon(1e-4));
  CHECK((*catalog("paper-phi-2"))(0.25, 0.3) == doctest::Approx(std::sin(-0.0625)).epsilon(1e-15));
  CHECK((*catalog("plane"))(1.5, 2.0) == 3.5);
  CHECK((*catalog("product"))(1.5, 2.0) == doctest::Approx(std::sin(3.0)).epsilon(1e-15));

  const auto ri = catalog("rational-indicator");
  CHECK((*ri)(0.5, 0.5) == 0.0);
  CHECK((*ri)(std::sqrt(2.0) / 2, 0.5) == 1.0);
  CHECK((*ri)(1.0 / 3, 2.0 / 7) == 0.0);
  CHECK((*ri)(M_PI, 0.25) == 1.0);
  CHECK_FALSE(ri->properties().continuous);

  const auto w = catalog("weierstrass", {2, 2.5, 3});
  double ref = 0.0;
  for (int k = 0; k <= 3; ++k) ref += std::pow(2.0, -0.5 * k) * (std::sin(std::pow(2.0, k) * 0.3) + std::sin(std::pow(2.0, k) * 0.9));
  CHECK((*w)(0.3, 0.9) == doctest::Approx(ref).epsilon(1e-14));
  CHECK(*w->properties().holder_exponent == doctest::Approx(0.5));

  CHECK_THROWS_AS(catalog("nope"), CatalogError);
  CHECK_THROWS_AS(catalog("weierstrass", {0.5}), ParameterError);
  CHECK_THROWS_AS(catalog("plane", {1.0}), ParameterError);
  CHECK_THROWS_AS(parse_function_spec("constant:abc"), ParameterError);
  CHECK((*parse_function_spec("constant:2.5"))(0, 0) == 2.5);
}

TEST_CASE("catalog sup bounds are honest") {
  for (const auto& e : catalog_entries()) {
    CAPTURE(e.name);
    const auto f = catalog(e.name);
    const Box box = e.domain.width() < 1e6 ? e.domain : Box(1, 2, 1, 2);
    const GridSamples g = sample(*f, GridSpec(box, 201, 201));
    REQUIRE(f->sup_bound(box).has_value());
    CHECK(std::max(std::fabs(g.min()), std::fabs(g.max())) <= *f->sup_bound(box) + 1e-15);
  }
}

TEST_CASE("limit construction values") {
  const auto t = catalog("t-phi-1");
  const auto phi = catalog("paper-phi-1");
  CHECK((*t)(0.625, 1.0) == doctest::Approx(0.5 * (*phi)(0.25, 1.0)).epsilon(1e-15));
  CHECK((*t)(0.625, 1.0) == doctest::Approx(-0.0262966).epsilon(1e-4));
  for (double x : {0.0, 0.1, 0.33, 0.5})
    for (double y : {0.0, 0.4, 1.0}) CHECK((*t)(x, y) == (*phi)(x, y));
  for (double y : {0.0, 0.4, 1.0}) CHECK((*t)(1.0, y) == (*phi)(0.0, y));
  CHECK_THROWS_AS(dynamic_cast<const TConstruction&>(*t).t_eval(1.5, 0.5), DomainError);
}

TEST_CASE("pieces and seams") {
  const auto held = catalog("t-phi-2");
  const auto& t = dynamic_cast<const TConstruction&>(*held);
  const auto phi = catalog("paper-phi-2");
  CHECK(t.piece(0.3) == 1);
  // A shared endpoint a_k belongs to the later piece; both pieces agree there.
  CHECK(t.piece(0.5) == 2);
  CHECK(t.piece(0.6) == 2);
  CHECK(t.piece(0.75) == 3);
  CHECK(t.piece_value(1, 0.5, 0.7) == doctest::Approx(t.piece_value(2, 0.5, 0.7)).epsilon(1e-14).scale(1.0));
  CHECK(t.piece(0.8) == 3);
  CHECK(t.piece(1.0) == t.depth() + 1);
  const double lip = 1.0;  // |d/dx sin(x(x-0.5))| <= 1 on [0, 0.5]
  for (int k = 1; k <= 20; ++k) {
    const double ak = sequence_point(k, 0, 1), eps = 1e-8 * std::ldexp(1.0, -k);
    for (double y : {0.2, 0.9}) CHECK(std::fabs(t(ak - eps, y) - t(ak + eps, y)) <= 1e-6 * lip);
  }
  // Amplitude decay: sup |F_k - phi(a0, .)| over piece k equals sup |phi - phi(a0, .)| / k.
  double sup1 = 0.0;
  for (int s = 0; s <= 400; ++s) sup1 = std::max(sup1, std::fabs((*phi)(0.5 * s / 400, 0.5) - (*phi)(0.0, 0.5)));
  for (int k = 1; k <= 20; ++k) {
    const double lo = sequence_point(k - 1, 0, 1), hi = sequence_point(k, 0, 1);
    double supk = 0.0;
    for (int s = 0; s <= 400; ++s) supk = std::max(supk, std::fabs(t.piece_value(k, lo + (hi - lo) * s / 400, 0.5) - (*phi)(0.0, 0.5)));
    CHECK(supk == doctest::Approx(sup1 / k).epsilon(1e-6));
  }
}

TEST_CASE("compatibility is enforced") {
  CHECK_THROWS_AS(TConstruction(Box(0, 1, 0, 1), catalog("plane")), ParameterError);
  CHECK_THROWS_AS(TConstruction(Box(0, 1, 0, 1), catalog("paper-phi-1"), 0), ParameterError);
  CHECK_THROWS_AS(TConstruction(Box(0, 2, 0, 1), catalog("paper-phi-1")), ParameterError);  // phi misses [0,1]
  CHECK_NOTHROW(TConstruction(Box(0, 1, 0, 1), catalog("constant", {3.0})));
  const TConstruction shallow(Box(0, 1, 0, 1), catalog("paper-phi-1"), 2);
  CHECK(shallow(0.9, 1.0) == (*catalog("paper-phi-1"))(0.0, 1.0));
}

TEST_CASE("T has box dimension two") {
  const GridSpec spec(Box(0, 1, 0, 1), 1025, 1025);
  const DimensionFit fit = dimension_fit(sample(*catalog("t-phi-1"), spec), default_deltas(spec), CountKind::Lower);
  CHECK(fit.slope >= 1.85);
  CHECK(fit.slope <= 2.15);
}

TEST_CASE("rational detection") {
  CHECK(is_representable_rational(0.5));
  CHECK(is_representable_rational(3.0));
  CHECK(is_representable_rational(-22.0 / 7));
  CHECK(is_representable_rational(123457.0 / 999983));
  CHECK_FALSE(is_representable_rational(std::sqrt(2.0)));
  CHECK_FALSE(is_representable_rational(M_E));
  CHECK_FALSE(is_representable_rational(1.0 / 3, 2));
}
