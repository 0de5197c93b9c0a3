#include <cmath>
#include <random>

#include <json.hpp>

#include "cli.hpp"
#include "fracdim2d/boxdim.hpp"
#include "fracdim2d/constructions.hpp"
#include "fracdim2d/fracint.hpp"
#include "fracdim2d/io.hpp"
#include "fracdim2d/variation.hpp"

namespace fracdim2d::cli {

namespace {

using json = nlohmann::ordered_json;

struct Report {
  json assertions = json::array();
  bool ok = true;

  void at_most(const std::string& name, double measured, double tolerance) {
    add(name, measured, "<=", tolerance, measured <= tolerance);
  }
  void at_least(const std::string& name, double measured, double tolerance) {
    add(name, measured, ">=", tolerance, measured >= tolerance);
  }
  void add(const std::string& name, double measured, const char* rel, double tolerance, bool pass) {
    assertions.push_back(
        {{"name", name}, {"measured", measured}, {"relation", rel}, {"tolerance", tolerance}, {"pass", pass}});
    ok = ok && pass;
  }
};

const Box kDefaultRect(1.0, 2.0, 1.0, 2.0);

std::vector<std::string> or_default(const std::vector<std::string>& given, std::vector<std::string> fallback) {
  return given.empty() ? fallback : given;
}

double sup_diff(const GridSamples& a, const GridSamples& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) m = std::max(m, std::fabs(a.values()[k] - b.values()[k]));
  return m;
}

// Source and operator rectangle for a catalog function: bounded domains are
// translated so their lower-left corner sits at (1, 1).
std::pair<SourcePtr, Box> operator_setup(const RunConfig& cfg, const std::string& spec) {
  SourcePtr src = resolve_source(cfg, spec);
  const Box d = src->domain();
  if (!cfg.rect.empty()) return {src, resolve_box(cfg, nullptr)};
  if (d.width() < 1e6 && d.height() < 1e6) {
    const double dx = 1.0 - d.a, dy = 1.0 - d.c;
    return {std::make_shared<ShiftedSource>(src, dx, dy), d.shifted(dx, dy)};
  }
  return {src, kDefaultRect};
}

void suite_semigroup(const RunConfig& cfg, Report& rep) {
  QuadratureSpec quad = quadrature(cfg);
  QuadratureSpec fine = quad;
  fine.panels *= 2;
  const FracOrder half(0.5, 0.5, 0.0, 0.0);
  for (const auto& spec : or_default(cfg.fns, {"constant:1", "plane", "product"})) {
    const auto [src, box] = operator_setup(cfg, spec);
    const GridSpec grid = resolve_grid(cfg, box, 33);
    const double gap = compose_semigroup(*src, grid, half, half, quad).sup_gap();
    const double gap2 = compose_semigroup(*src, grid, half, half, fine).sup_gap();
    rep.at_most(spec + ": sup gap at panels=" + std::to_string(quad.panels), gap, 1e-3);
    rep.at_least(spec + ": gap reduction when panels double", gap / gap2, 2.0);
  }
}

void suite_special_cases(const RunConfig& cfg, Report& rep) {
  const QuadratureSpec quad = quadrature(cfg);
  const double alpha = cfg.alpha.value_or(0.5), beta = cfg.beta.value_or(0.5);
  for (const auto& spec : or_default(cfg.fns, {"constant:1", "plane", "product", "sin-x"})) {
    const auto [src, box] = operator_setup(cfg, spec);
    const GridSpec grid = resolve_grid(cfg, box, 17);
    const GridSamples k = katugampola_2d_grid(*src, grid, FracOrder(alpha, beta, 0, 0), quad);
    const GridSamples r = riemann_liouville_2d_grid(*src, grid, alpha, beta, quad);
    rep.at_most(spec + ": katugampola(p=q=0) vs riemann-liouville", sup_diff(k, r), 1e-6);
  }
  const auto one = catalog("constant", {1.0});
  const Rectangle rect(kDefaultRect);
  const double eps = 1e-4;
  const double h = hadamard_2d(*one, rect, rect.b(), rect.d(), alpha, beta, quad);
  const double k = katugampola_2d(*one, rect, rect.b(), rect.d(), FracOrder(alpha, beta, -1 + eps, -1 + eps), quad);
  rep.at_most("constant:1: katugampola(p=q=-1+1e-4) vs hadamard, relative", std::fabs(k / h - 1.0), 1e-2);
}

void suite_separable(const RunConfig& cfg, Report& rep) {
  const QuadratureSpec quad = quadrature(cfg);
  const double alpha = cfg.alpha.value_or(0.5), p = cfg.p.value_or(0.0);
  std::mt19937_64 rng(cfg.seed);
  for (const auto& spec : or_default(cfg.gs, {"constant:1", "coord-x", "sin-x"})) {
    const auto [src, box] = operator_setup(cfg, spec);
    const Rectangle rect(box);
    std::uniform_real_distribution<double> ux(box.a, box.b), uy(box.c, box.d);
    const FracOrder ord(alpha, 1.0, p, 0.0);
    const double c = box.c;
    const UnivariateFn g = [&src, c](double t) { return (*src)(t, c); };
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double x = ux(rng), y = uy(rng);
      const double two = katugampola_2d(*src, rect, x, y, ord, quad);
      const double one = katugampola_1d(g, box.a, x, alpha, p, quad);
      worst = std::max(worst, std::fabs(two - (y - c) * one));
    }
    rep.at_most(spec + ": 2-D vs (y-c) * 1-D over 50 points", worst, 1e-8);
  }
}

void suite_boundedness(const RunConfig& cfg, Report& rep) {
  const QuadratureSpec quad = quadrature(cfg);
  const FracOrder ord(cfg.alpha.value_or(0.5), cfg.beta.value_or(0.5), cfg.p.value_or(0.0), cfg.q.value_or(0.0));
  std::vector<std::string> defaults;
  for (const auto& e : catalog_entries()) {
    if (e.known_sup && e.flags.continuous) defaults.push_back(e.name);
  }
  for (const auto& spec : or_default(cfg.fns, defaults)) {
    const auto [src, box] = operator_setup(cfg, spec);
    const auto M = cfg.M ? cfg.M : src->sup_bound(box);
    if (!M) throw ParameterError(spec + " has no known sup bound; pass --M", "M");
    const GridSpec grid = resolve_grid(cfg, box, 17);
    const BoundCertificate cert = boundedness_certificate(*src, grid, ord, quad, *M);
    rep.at_most(spec + ": sup |I f| - bound", cert.sup_abs_observed - cert.bound, cert.tolerance);
  }
  const auto one = catalog("constant", {1.0});
  const Rectangle rect(kDefaultRect);
  const double at_corner = katugampola_2d(*one, rect, rect.b(), rect.d(), ord, quad);
  const double bound = boundedness_bound(rect, ord, 1.0);
  rep.at_most("constant:1: bound attained at (b,d), relative", std::fabs(at_corner / bound - 1.0), 1e-6);
}

void suite_bv_preservation(const RunConfig& cfg, Report& rep) {
  const QuadratureSpec quad = quadrature(cfg);
  const FracOrder ord(cfg.alpha.value_or(0.5), cfg.beta.value_or(0.5), cfg.p.value_or(0.0), cfg.q.value_or(0.0));
  std::vector<std::size_t> levels{128, 256};
  if (!cfg.levels.empty()) {
    levels.clear();
    for (double l : parse_list(cfg.levels, "levels")) levels.push_back(static_cast<std::size_t>(l));
  }
  for (const auto& spec : or_default(cfg.fns, {"plane", "product"})) {
    const auto [src, box] = operator_setup(cfg, spec);
    if (!src->properties().bounded_variation) throw ParameterError(spec + " is not flagged BV", "fn");
    const auto trend = variation_trend(
        [&](const GridSpec& s) { return katugampola_2d_grid(*src, s, ord, quad); }, box, levels);
    const double ratio = trend.back().value / trend[trend.size() - 2].value;
    rep.at_most(spec + ": |V(last)/V(previous) - 1| of the integral", std::fabs(ratio - 1.0), 0.05);
  }
}

void suite_dimension_bounds(const RunConfig& cfg, Report& rep) {
  const QuadratureSpec quad = quadrature(cfg);
  const double alpha = cfg.alpha.value_or(0.5), beta = cfg.beta.value_or(0.5);
  const FracOrder ord(alpha, beta, cfg.p.value_or(0.0), cfg.q.value_or(0.0));
  const auto slope = [](const GridSamples& g) { return dimension_fit(g, default_deltas(g.spec()), CountKind::Lower); };

  for (const auto& spec : or_default(cfg.fns, {"plane"})) {
    const auto [src, box] = operator_setup(cfg, spec);
    const GridSpec grid = resolve_grid(cfg, box, 1025);
    const DimensionFit raw = slope(sample(*src, grid));
    rep.at_least(spec + ": slope", raw.slope, 1.9);
    if (src->properties().bounded_variation) rep.at_most(spec + ": slope", raw.slope, 2.1);
    if (auto s = src->properties().holder_exponent) rep.at_most(spec + ": slope vs 3 - s + 0.2", raw.slope, 3.2 - *s);
    rep.at_least(spec + ": r^2", raw.r_squared, 0.98);
    const DimensionFit integ = slope(katugampola_2d_grid(*src, grid, ord, quad));
    if (src->properties().bounded_variation) {
      rep.at_least(spec + ": slope of the integral", integ.slope, 1.9);
      rep.at_most(spec + ": slope of the integral", integ.slope, 2.1);
    }
    rep.at_most(spec + ": slope of the integral vs 3 - min(alpha,beta) + 0.2", integ.slope,
                3.2 - std::min(alpha, beta));
    rep.at_least(spec + ": r^2 of the integral", integ.r_squared, 0.98);
  }
}

}  // namespace

int cmd_verify(const RunConfig& cfg) {
  Report rep;
  if (cfg.suite == "semigroup") {
    suite_semigroup(cfg, rep);
  } else if (cfg.suite == "special-cases") {
    suite_special_cases(cfg, rep);
  } else if (cfg.suite == "separable") {
    suite_separable(cfg, rep);
  } else if (cfg.suite == "boundedness") {
    suite_boundedness(cfg, rep);
  } else if (cfg.suite == "bv-preservation") {
    suite_bv_preservation(cfg, rep);
  } else if (cfg.suite == "dimension-bounds") {
    suite_dimension_bounds(cfg, rep);
  } else {
    throw ParameterError("unknown suite '" + cfg.suite +
                             "' (semigroup, special-cases, separable, boundedness, bv-preservation, "
                             "dimension-bounds)",
                         "suite");
  }
  json report{{"suite", cfg.suite}, {"pass", rep.ok}, {"assertions", rep.assertions}};
  std::size_t passed = 0;
  for (const auto& a : rep.assertions) passed += a["pass"].get<bool>() ? 1 : 0;
  emit(cfg, report.dump(2) + "\n",
       "verify " + cfg.suite + ": " + std::to_string(passed) + "/" + std::to_string(rep.assertions.size()) +
           " assertions pass");
  return rep.ok ? kExitOk : kExitVerify;
}

}  // namespace fracdim2d::cli
