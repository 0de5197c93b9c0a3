#include "fracdim2d/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracdim2d/io.hpp"

namespace fracdim2d {

double sequence_point(int n, double a, double b) {
  if (n < 0) throw ParameterError("sequence index must be >= 0", "n");
  if (n == 0) return a;
  return a + (b - a) * (1.0 - std::ldexp(1.0, -n));
}

double psi_n(double x, int n, double a, double b) {
  if (n < 1) throw ParameterError("psi_n needs n >= 1", "n");
  if (!(a < b)) throw ParameterError("psi_n needs a < b", "rect");
  const double lo = sequence_point(n - 1, a, b), hi = sequence_point(n, a, b);
  const double slack = 1e-12 * (b - a);
  if (x < lo - slack || x > hi + slack) {
    throw DomainError("x = " + io::format_real(x) + " lies outside piece " + std::to_string(n));
  }
  const double a0 = a, a1 = sequence_point(1, a, b);
  return std::ldexp((a1 - a0) * x + a0 * hi - a1 * lo, n) / (b - a);
}

TConstruction::TConstruction(Box rect, SourcePtr phi, int depth, std::string label)
    : rect_(rect), phi_(std::move(phi)), depth_(depth), label_(std::move(label)) {
  if (!phi_) throw ParameterError("construction needs a generating function", "phi");
  if (depth_ < 1) throw ParameterError("depth must be a positive integer", "depth");
  const double a0 = rect_.a, a1 = sequence_point(1, rect_.a, rect_.b);
  if (!phi_->domain().contains(Box(a0, a1, rect_.c, rect_.d))) {
    throw ParameterError("generating function " + phi_->name() + " does not cover the first piece", "phi");
  }
  constexpr int kCheck = 257;
  for (int j = 0; j < kCheck; ++j) {
    const double y = rect_.c + (rect_.d - rect_.c) * j / (kCheck - 1);
    const double l = (*phi_)(a0, y), r = (*phi_)(a1, y);
    if (!(std::fabs(l - r) <= 1e-12 * std::max(1.0, std::fabs(l)))) {
      throw ParameterError("generating function " + phi_->name() + " violates phi(a0,y) = phi(a1,y) at y = " +
                               io::format_real(y),
                           "phi");
    }
  }
}

int TConstruction::piece(double x) const {
  const double a = rect_.a, b = rect_.b;
  if (x >= b) return depth_ + 1;
  const double r = (x - a) / (b - a);
  int k = r <= 0.0 ? 1 : static_cast<int>(std::floor(-std::log2(1.0 - r))) + 1;
  k = std::clamp(k, 1, depth_ + 1);
  while (k > 1 && x < sequence_point(k - 1, a, b)) --k;
  while (k <= depth_ && x > sequence_point(k, a, b)) ++k;
  return k;
}

double TConstruction::piece_value(int k, double x, double y) const {
  const double a0 = rect_.a;
  if (k == 1) return (*phi_)(x, y);
  const double a1 = sequence_point(1, rect_.a, rect_.b);
  const double u = std::clamp(psi_n(x, k, rect_.a, rect_.b), a0, a1);
  const double kk = static_cast<double>(k);
  return (*phi_)(u, y) / kk + (kk - 1.0) / kk * (*phi_)(a0, y);
}

double TConstruction::operator()(double x, double y) const {
  const int k = piece(x);
  if (k > depth_) return (*phi_)(rect_.a, y);
  return piece_value(k, x, y);
}

std::string TConstruction::name() const {
  return label_.empty() ? "T[" + phi_->name() + "]" : label_;
}

SourceProperties TConstruction::properties() const { return {true, false, std::nullopt}; }

std::optional<double> TConstruction::sup_bound(const Box&) const {
  // Every value is a convex combination of phi values on the first piece.
  return phi_->sup_bound(Box(rect_.a, sequence_point(1, rect_.a, rect_.b), rect_.c, rect_.d));
}

namespace {

constexpr double kHuge = 1e300;
const Box kPlane(-kHuge, kHuge, -kHuge, kHuge);

template <class F, class M>
class LambdaSource final : public FunctionSource {
 public:
  LambdaSource(std::string name, Box domain, SourceProperties props, F f, M sup)
      : name_(std::move(name)), domain_(domain), props_(props), f_(std::move(f)), sup_(std::move(sup)) {}
  double operator()(double x, double y) const override { return f_(x, y); }
  Box domain() const override { return domain_; }
  std::string name() const override { return name_; }
  SourceProperties properties() const override { return props_; }
  std::optional<double> sup_bound(const Box& box) const override { return sup_(box); }

 private:
  std::string name_;
  Box domain_;
  SourceProperties props_;
  F f_;
  M sup_;
};

template <class F, class M>
SourcePtr make(std::string name, Box domain, SourceProperties props, F f, M sup) {
  return std::make_shared<LambdaSource<F, M>>(std::move(name), domain, props, std::move(f), std::move(sup));
}

auto no_sup = [](const Box&) -> std::optional<double> { return std::nullopt; };

constexpr SourceProperties kSmooth{true, true, 1.0};

std::string with_params(const std::string& name, const std::vector<double>& p) {
  if (p.empty()) return name;
  std::string s = name + ":";
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) s += ",";
    s += io::format_real(p[k]);
  }
  return s;
}

void expect_at_most(const std::string& name, const std::vector<double>& p, std::size_t n) {
  if (p.size() > n) {
    throw ParameterError(name + " takes at most " + std::to_string(n) + " parameters", "fn");
  }
}

double param(const std::vector<double>& p, std::size_t k, double fallback) {
  return k < p.size() ? p[k] : fallback;
}

const Box kPhiDomain(0.0, 0.5, 0.0, 1.0);
const Box kUnit(0.0, 1.0, 0.0, 1.0);

SourcePtr phi1() {
  return make("paper-phi-1", kPhiDomain, kSmooth, [](double x, double y) { return x * (x - 0.5) * std::sin(y); },
              [](const Box&) -> std::optional<double> { return 1.0 / 16.0; });
}

SourcePtr phi2() {
  return make("paper-phi-2", kPhiDomain, kSmooth, [](double x, double) { return std::sin(x * (x - 0.5)); },
              [](const Box&) -> std::optional<double> { return std::sin(1.0 / 16.0); });
}

int depth_param(const std::vector<double>& p) {
  const double d = param(p, 0, TConstruction::kDefaultDepth);
  if (!(d >= 1.0 && d <= 60.0 && d == std::floor(d))) {
    throw ParameterError("depth must be an integer in [1, 60]", "depth");
  }
  return static_cast<int>(d);
}

}  // namespace

bool is_representable_rational(double x, long long max_den) {
  if (!std::isfinite(x)) return false;
  if (x == std::floor(x)) return true;
  // Walk the continued-fraction convergents h/k of |x| while k <= max_den.
  long double r = std::fabs(static_cast<long double>(x));
  long long h0 = 1, h1 = static_cast<long long>(std::floor(r));
  long long k0 = 0, k1 = 1;
  long double frac = r - std::floor(r);
  const double ax = std::fabs(x);
  for (int it = 0; it < 64 && frac != 0.0L; ++it) {
    r = 1.0L / frac;
    const long double fl = std::floor(r);
    if (fl > 1e12L) break;
    const auto q = static_cast<long long>(fl);
    frac = r - fl;
    const long long h2 = q * h1 + h0, k2 = q * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (static_cast<double>(h1) / static_cast<double>(k1) == ax) return true;
  }
  return static_cast<double>(h1) / static_cast<double>(k1) == ax;
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"constant", "k=1", "f = k", kPlane, kSmooth, true},
      {"plane", "", "f = x + y", kPlane, kSmooth, true},
      {"product", "", "f = sin(x y)", kPlane, kSmooth, true},
      {"coord-x", "", "f = x", kPlane, kSmooth, true},
      {"sin-x", "", "f = sin(x)", kPlane, kSmooth, true},
      {"paper-phi-1", "", "f = x (x - 0.5) sin(y) on [0,0.5]x[0,1]", kPhiDomain, kSmooth, true},
      {"paper-phi-2", "", "f = sin(x (x - 0.5)) on [0,0.5]x[0,1]", kPhiDomain, kSmooth, true},
      {"t-phi-1", "depth=24", "limit construction T over paper-phi-1 on [0,1]^2", kUnit,
       {true, false, std::nullopt}, true},
      {"t-phi-2", "depth=24", "limit construction T over paper-phi-2 on [0,1]^2", kUnit,
       {true, false, std::nullopt}, true},
      {"weierstrass", "lambda=2,s=2.5,K=12",
       "f = sum_{k=0..K} lambda^((s-3)k) (sin(lambda^k x) + sin(lambda^k y))", kPlane, {true, false, 0.5}, true},
      {"rational-indicator", "Q=1e6", "0 when x and y are both p/q with q <= Q, else 1", kPlane,
       {false, false, std::nullopt}, true},
  };
  return entries;
}

SourcePtr catalog(const std::string& name, const std::vector<double>& p) {
  const std::string label = with_params(name, p);
  for (double v : p) {
    if (!std::isfinite(v)) throw ParameterError("catalog parameters must be finite", "fn");
  }
  if (name == "constant") {
    expect_at_most(name, p, 1);
    const double k = param(p, 0, 1.0);
    return make(label, kPlane, kSmooth, [k](double, double) { return k; },
                [k](const Box&) -> std::optional<double> { return std::fabs(k); });
  }
  if (name == "plane") {
    expect_at_most(name, p, 0);
    return make(label, kPlane, kSmooth, [](double x, double y) { return x + y; },
                [](const Box& b) -> std::optional<double> {
                  return std::max(std::fabs(b.a + b.c), std::fabs(b.b + b.d));
                });
  }
  if (name == "product") {
    expect_at_most(name, p, 0);
    return make(label, kPlane, kSmooth, [](double x, double y) { return std::sin(x * y); },
                [](const Box&) -> std::optional<double> { return 1.0; });
  }
  if (name == "coord-x") {
    expect_at_most(name, p, 0);
    return make(label, kPlane, kSmooth, [](double x, double) { return x; },
                [](const Box& b) -> std::optional<double> { return std::max(std::fabs(b.a), std::fabs(b.b)); });
  }
  if (name == "sin-x") {
    expect_at_most(name, p, 0);
    return make(label, kPlane, kSmooth, [](double x, double) { return std::sin(x); },
                [](const Box&) -> std::optional<double> { return 1.0; });
  }
  if (name == "paper-phi-1") {
    expect_at_most(name, p, 0);
    return phi1();
  }
  if (name == "paper-phi-2") {
    expect_at_most(name, p, 0);
    return phi2();
  }
  if (name == "t-phi-1" || name == "t-phi-2") {
    expect_at_most(name, p, 1);
    return std::make_shared<TConstruction>(kUnit, name == "t-phi-1" ? phi1() : phi2(), depth_param(p), label);
  }
  if (name == "weierstrass") {
    expect_at_most(name, p, 3);
    const double lambda = param(p, 0, 2.0), s = param(p, 1, 2.5), K = param(p, 2, 12.0);
    if (!(lambda > 1.0)) throw ParameterError("weierstrass lambda must be > 1", "lambda");
    if (!(s > 2.0 && s < 3.0)) throw ParameterError("weierstrass s must lie in (2, 3)", "s");
    if (!(K >= 0.0 && K <= 60.0 && K == std::floor(K))) {
      throw ParameterError("weierstrass K must be an integer in [0, 60]", "K");
    }
    std::vector<double> amp, freq;
    double sup = 0.0;
    for (int k = 0; k <= static_cast<int>(K); ++k) {
      amp.push_back(std::pow(lambda, (s - 3.0) * k));
      freq.push_back(std::pow(lambda, static_cast<double>(k)));
      sup += 2.0 * amp.back();
    }
    return make(
        label, kPlane, SourceProperties{true, false, 3.0 - s},
        [amp, freq](double x, double y) {
          CompensatedSum acc;
          for (std::size_t k = 0; k < amp.size(); ++k) {
            acc.add(amp[k] * (std::sin(freq[k] * x) + std::sin(freq[k] * y)));
          }
          return acc.value();
        },
        [sup](const Box&) -> std::optional<double> { return sup; });
  }
  if (name == "rational-indicator") {
    expect_at_most(name, p, 1);
    const double Q = param(p, 0, 1e6);
    if (!(Q >= 1.0 && Q <= 1e9)) throw ParameterError("rational-indicator Q must lie in [1, 1e9]", "Q");
    const auto q = static_cast<long long>(Q);
    return make(label, kPlane, SourceProperties{false, false, std::nullopt},
                [q](double x, double y) {
                  return is_representable_rational(x, q) && is_representable_rational(y, q) ? 0.0 : 1.0;
                },
                [](const Box&) -> std::optional<double> { return 1.0; });
  }
  throw CatalogError("unknown catalog function '" + name + "'", "fn");
}

SourcePtr parse_function_spec(const std::string& spec) {
  if (spec.empty()) throw ParameterError("empty function spec", "fn");
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "csv" || head == "json") {
    if (rest.empty()) throw ParameterError(head + " spec needs a path", "fn");
    return std::make_shared<SampledSource>(io::load(rest), spec);
  }
  std::vector<double> params;
  if (!rest.empty()) {
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        params.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParameterError("bad numeric parameter '" + tok + "' in function spec", "fn");
      }
    }
  }
  return catalog(head, params);
}

}  // namespace fracdim2d
