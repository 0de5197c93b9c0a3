#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "fracdim2d/boxdim.hpp"
#include "fracdim2d/constructions.hpp"
#include "fracdim2d/fracint.hpp"
#include "fracdim2d/io.hpp"
#include "fracdim2d/variation.hpp"

namespace fracdim2d::cli {

using json = nlohmann::ordered_json;

std::vector<double> parse_list(const std::string& text, const std::string& parameter) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ParameterError("--" + parameter + ": '" + tok + "' is not a number", parameter);
    }
  }
  if (out.empty()) throw ParameterError("--" + parameter + " is empty", parameter);
  return out;
}

QuadratureSpec quadrature(const RunConfig& cfg) {
  QuadratureSpec q;
  q.panels = cfg.panels;
  q.grading = cfg.grading;
  q.points = cfg.points;
  q.validate();
  return q;
}

SourcePtr resolve_source(const RunConfig& cfg, const std::string& spec) {
  if (spec.empty()) throw ParameterError("missing --fn", "fn");
  SourcePtr src = parse_function_spec(spec);
  if (!cfg.shift.empty()) {
    const auto s = parse_list(cfg.shift, "shift");
    if (s.size() != 2) throw ParameterError("--shift takes dx,dy", "shift");
    src = std::make_shared<ShiftedSource>(src, s[0], s[1]);
  }
  return src;
}

Box resolve_box(const RunConfig& cfg, const FunctionSource* src) {
  if (!cfg.rect.empty()) {
    const auto r = parse_list(cfg.rect, "rect");
    if (r.size() != 4) throw ParameterError("--rect takes a,b,c,d", "rect");
    return Box(r[0], r[1], r[2], r[3]);
  }
  if (src) {
    const Box d = src->domain();
    if (d.width() < 1e6 && d.height() < 1e6) return d;
  }
  throw ParameterError("missing --rect", "rect");
}

GridSpec resolve_grid(const RunConfig& cfg, const Box& box, std::size_t default_nodes) {
  if (cfg.grid.empty()) return GridSpec(box, default_nodes, default_nodes);
  const auto g = parse_list(cfg.grid, "grid");
  if (g.size() != 2 || g[0] != std::floor(g[0]) || g[1] != std::floor(g[1]) || g[0] < 2 || g[1] < 2 ||
      g[0] > 1e5 || g[1] > 1e5) {
    throw ParameterError("--grid takes two integers m,n in [2, 1e5]", "grid");
  }
  return GridSpec(box, static_cast<std::size_t>(g[0]), static_cast<std::size_t>(g[1]));
}

namespace {

double require(const std::optional<double>& v, const char* name) {
  if (!v) throw ParameterError(std::string("missing --") + name, name);
  return *v;
}

void expect_unset_or(const std::optional<double>& v, double want, const char* name, const std::string& op) {
  if (v && *v != want) {
    throw ParameterError("--" + std::string(name) + " must be " + io::format_real(want) + " with --op " + op, name);
  }
}

FracOrder katugampola_order(const RunConfig& cfg) {
  const double alpha = require(cfg.alpha, "alpha"), beta = require(cfg.beta, "beta");
  const double p = cfg.p.value_or(0.0), q = cfg.q.value_or(0.0);
  if (p <= -1.0) throw ParameterError("p must be > -1; the p = -1 limit is --op hadamard", "p");
  if (q <= -1.0) throw ParameterError("q must be > -1; the q = -1 limit is --op hadamard", "q");
  return FracOrder(alpha, beta, p, q);
}

std::string op_name(const RunConfig& cfg, const char* fallback) { return cfg.op.empty() ? fallback : cfg.op; }

void check_continuous(const RunConfig& cfg, const FunctionSource& src) {
  if (!src.properties().continuous && !cfg.allow_discontinuous) {
    throw ParameterError(src.name() + " is discontinuous; pass --allow-discontinuous to sample it anyway", "fn");
  }
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

}  // namespace

GridSamples apply_operator(const RunConfig& cfg, const FunctionSource& src, const GridSpec& spec) {
  const std::string op = op_name(cfg, "none");
  if (op == "none") return sample(src, spec);
  const QuadratureSpec quad = quadrature(cfg);
  if (op == "katugampola") return katugampola_2d_grid(src, spec, katugampola_order(cfg), quad);
  if (op == "riemann-liouville") {
    expect_unset_or(cfg.p, 0.0, "p", op);
    expect_unset_or(cfg.q, 0.0, "q", op);
    return riemann_liouville_2d_grid(src, spec, require(cfg.alpha, "alpha"), require(cfg.beta, "beta"), quad);
  }
  if (op == "hadamard") {
    expect_unset_or(cfg.p, -1.0, "p", op);
    expect_unset_or(cfg.q, -1.0, "q", op);
    return hadamard_2d_grid(src, spec, require(cfg.alpha, "alpha"), require(cfg.beta, "beta"), quad);
  }
  throw ParameterError("--op must be katugampola, riemann-liouville, hadamard or none", "op");
}

void emit(const RunConfig& cfg, const std::string& artifact, const std::string& summary) {
  if (cfg.out.empty()) {
    std::cout << artifact;
    std::cerr << summary << '\n';
    return;
  }
  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) throw IoError("cannot open " + cfg.out + " for writing", "out");
  os << artifact;
  if (!os) throw IoError("failed writing " + cfg.out, "out");
  std::cout << summary << '\n';
}

std::string grid_artifact(const RunConfig& cfg, const GridSamples& g) {
  std::string fmt = cfg.format;
  if (fmt.empty()) fmt = cfg.out.ends_with(".json") ? "json" : "csv";
  std::ostringstream os;
  if (fmt == "json") {
    io::write_json(os, g);
  } else if (fmt == "csv") {
    io::write_csv(os, g);
  } else {
    throw ParameterError("--format must be csv or json", "format");
  }
  return os.str();
}

int cmd_integrate(const RunConfig& cfg) {
  const std::string op = op_name(cfg, "katugampola");
  if (op == "none") throw ParameterError("integrate needs an operator", "op");
  RunConfig c = cfg;
  c.op = op;
  const SourcePtr src = resolve_source(cfg, cfg.fn);
  const Box box = resolve_box(cfg, nullptr);
  const Rectangle rect(box);
  const GridSpec spec = resolve_grid(cfg, box, 33);
  const GridSamples g = apply_operator(c, *src, spec);

  std::string summary = "integrate: op=" + op + " fn=" + src->name() + " grid=" + std::to_string(spec.m()) + "x" +
                        std::to_string(spec.n()) + " value(b,d)=" + io::format_real(g.at(spec.m() - 1, spec.n() - 1));
  if (op != "hadamard") {
    std::optional<double> M = cfg.M ? cfg.M : src->sup_bound(box);
    if (M) {
      const FracOrder ord = op == "katugampola" ? katugampola_order(cfg) : FracOrder(*cfg.alpha, *cfg.beta, 0, 0);
      const double bound = boundedness_bound(rect, ord, *M);
      const double observed = std::max(std::fabs(g.min()), std::fabs(g.max()));
      const double tol = error_budget(rect, ord, quadrature(cfg), *M);
      summary += " certificate: sup|I|=" + io::format_real(observed) + " bound=" + io::format_real(bound) +
                 (observed <= bound + tol ? " holds" : " VIOLATED");
    }
  }
  emit(cfg, grid_artifact(cfg, g), summary);
  return kExitOk;
}

namespace {

int dimension_from_counts(const RunConfig& cfg) {
  std::ifstream is(cfg.counts_from);
  if (!is) throw IoError("cannot open " + cfg.counts_from, "counts-from");
  std::vector<double> deltas, counts;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError("counts file rows must be delta,count", "counts-from");
    try {
      deltas.push_back(std::stod(line.substr(0, comma)));
      counts.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      if (deltas.empty() && counts.empty()) continue;  // header row
      throw IoError("bad counts row '" + line + "'", "counts-from");
    }
  }
  const CountKind which = parse_count_kind(cfg.which);
  const DimensionFit fit = fit_counts(deltas, counts, which);
  emit(cfg, to_json(fit, {}) + "\n",
       "dimension: slope=" + fixed(fit.slope, 4) + " r2=" + fixed(fit.r_squared, 4) + " (" +
           std::to_string(fit.deltas.size()) + " scales from " + cfg.counts_from + ")");
  return kExitOk;
}

}  // namespace

int cmd_dimension(const RunConfig& cfg) {
  if (!cfg.counts_from.empty()) return dimension_from_counts(cfg);
  const SourcePtr src = resolve_source(cfg, cfg.fn);
  check_continuous(cfg, *src);
  const Box box = resolve_box(cfg, src.get());
  const GridSpec spec = resolve_grid(cfg, box, 257);
  const GridSamples g = apply_operator(cfg, *src, spec);
  const CountKind which = parse_count_kind(cfg.which);
  const std::vector<double> deltas = cfg.deltas.empty() ? default_deltas(spec) : parse_list(cfg.deltas, "deltas");

  std::vector<BoxCount> counts;
  std::vector<double> used, chosen;
  for (double d : deltas) {
    counts.push_back(oscillation_counts(g, d));
    used.push_back(d);
    chosen.push_back(static_cast<double>(which == CountKind::Lower ? counts.back().n_lower : counts.back().n_upper));
  }
  const DimensionFit fit = fit_counts(used, chosen, which);

  json report;
  report["fn"] = src->name();
  report["op"] = op_name(cfg, "none");
  report["grid"] = {spec.m(), spec.n()};
  report["which"] = to_string(which);
  report["slope"] = fit.slope;
  report["intercept"] = fit.intercept;
  report["r_squared"] = fit.r_squared;
  json points = json::array();
  std::ostringstream table;
  table << "delta,count_lower,count_upper" << (cfg.oracle ? ",count_oracle" : "") << '\n';
  for (const BoxCount& bc : counts) {
    json pt{{"delta", bc.delta}, {"n_lower", bc.n_lower}, {"n_upper", bc.n_upper}};
    table << io::format_real(bc.delta) << ',' << bc.n_lower << ',' << bc.n_upper;
    if (cfg.oracle) {
      const auto direct = boxcount_bruteforce_3d(g, bc.delta);
      pt["oracle"] = direct;
      table << ',' << direct;
    }
    table << '\n';
    points.push_back(pt);
  }
  report["points"] = points;
  if (!cfg.csv_out.empty()) {
    std::ofstream os(cfg.csv_out, std::ios::binary);
    if (!os) throw IoError("cannot open " + cfg.csv_out + " for writing", "csv");
    os << table.str();
  }
  emit(cfg, report.dump(2) + "\n",
       "dimension: fn=" + src->name() + " slope=" + fixed(fit.slope, 4) + " r2=" + fixed(fit.r_squared, 4) + " (" +
           to_string(which) + ", " + std::to_string(fit.deltas.size()) + " scales)");
  return kExitOk;
}

int cmd_variation(const RunConfig& cfg) {
  const SourcePtr src = resolve_source(cfg, cfg.fn);
  check_continuous(cfg, *src);
  const Box box = resolve_box(cfg, src.get());
  json report;
  report["fn"] = src->name();
  report["op"] = op_name(cfg, "none");
  std::string summary;
  if (!cfg.levels.empty()) {
    std::vector<std::size_t> levels;
    for (double l : parse_list(cfg.levels, "levels")) {
      if (l != std::floor(l) || l < 2 || l > 1e5) throw ParameterError("levels must be integers >= 2", "levels");
      levels.push_back(static_cast<std::size_t>(l));
    }
    const auto trend =
        variation_trend([&](const GridSpec& s) { return apply_operator(cfg, *src, s); }, box, levels);
    json arr = json::array();
    bool increasing = true;
    for (std::size_t k = 0; k < trend.size(); ++k) {
      arr.push_back({{"level", trend[k].level}, {"value", trend[k].value}});
      if (k > 0 && !(trend[k].value > trend[k - 1].value)) increasing = false;
    }
    report["trend"] = arr;
    report["strictly_increasing"] = increasing;
    if (trend.size() >= 2) report["log_slope"] = trend_log_slope(trend);
    summary = "variation: fn=" + src->name() + " levels=" + std::to_string(trend.size()) +
              " last=" + io::format_real(trend.back().value) + (increasing ? " increasing" : " not increasing");
  } else {
    const GridSpec spec = resolve_grid(cfg, box, 257);
    const GridSamples g = apply_operator(cfg, *src, spec);
    VariationOptions opts;
    opts.corner_pinned = cfg.corner_pinned;
    const VariationResult r = arzela_variation(g, opts);
    report["grid"] = {spec.m(), spec.n()};
    report["corner_pinned"] = cfg.corner_pinned;
    report["value"] = r.value;
    json path = json::array();
    for (const auto& ij : r.path) path.push_back({ij[0], ij[1]});
    report["path"] = path;
    summary = "variation: fn=" + src->name() + " value=" + io::format_real(r.value) +
              " path_length=" + std::to_string(r.path.size());
  }
  emit(cfg, report.dump(2) + "\n", summary);
  return kExitOk;
}

int cmd_construct(const RunConfig& cfg) {
  SourcePtr src;
  if (!cfg.phi.empty()) {
    if (!cfg.fn.empty()) throw ParameterError("pass either --fn or --phi", "phi");
    const SourcePtr phi = resolve_source(cfg, cfg.phi);
    const Box box = cfg.rect.empty() ? Box(0.0, 1.0, 0.0, 1.0) : resolve_box(cfg, nullptr);
    src = std::make_shared<TConstruction>(box, phi, cfg.depth);
  } else {
    src = resolve_source(cfg, cfg.fn);
  }
  check_continuous(cfg, *src);
  const Box box = !cfg.phi.empty() ? src->domain() : resolve_box(cfg, src.get());
  const GridSpec spec = resolve_grid(cfg, box, 257);
  const GridSamples g = sample(*src, spec);
  emit(cfg, grid_artifact(cfg, g),
       "construct: fn=" + src->name() + " grid=" + std::to_string(spec.m()) + "x" + std::to_string(spec.n()) +
           " range=[" + io::format_real(g.min()) + ", " + io::format_real(g.max()) + "]");
  return kExitOk;
}

}  // namespace fracdim2d::cli
