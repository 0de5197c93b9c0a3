#include "fracdim2d/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracdim2d/parallel.hpp"

namespace fracdim2d {

namespace {

bool finite(double v) { return std::isfinite(v); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Box::Box(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
  if (!(finite(a) && finite(b) && finite(c) && finite(d))) {
    throw ParameterError("box coordinates must be finite", "rect");
  }
  if (!(a < b) || !(c < d)) {
    throw ParameterError("box requires a < b and c < d", "rect");
  }
}

bool Box::contains(double x, double y) const {
  const double sx = 1e-12 * width();
  const double sy = 1e-12 * height();
  return x >= a - sx && x <= b + sx && y >= c - sy && y <= d + sy;
}

bool Box::contains(const Box& o) const { return contains(o.a, o.c) && contains(o.b, o.d); }

Rectangle::Rectangle(double a, double b, double c, double d) {
  if (!(finite(a) && finite(b) && finite(c) && finite(d))) {
    throw ParameterError("rectangle coordinates must be finite", "rect");
  }
  if (!(0.0 < a && a < b) || !(0.0 < c && c < d)) {
    throw ParameterError("rectangle requires 0 < a < b and 0 < c < d (got " + fmt(a) + "," +
                             fmt(b) + "," + fmt(c) + "," + fmt(d) + ")",
                         "rect");
  }
  box_ = Box(a, b, c, d);
}

FracOrder::FracOrder(double alpha, double beta, double p, double q)
    : alpha_(alpha), beta_(beta), p_(p), q_(q) {
  if (!(finite(alpha) && alpha > 0.0)) throw ParameterError("alpha must be > 0", "alpha");
  if (!(finite(beta) && beta > 0.0)) throw ParameterError("beta must be > 0", "beta");
  if (!(finite(p) && p > -1.0)) throw ParameterError("p must be > -1", "p");
  if (!(finite(q) && q > -1.0)) throw ParameterError("q must be > -1", "q");
}

GridSpec::GridSpec(Box rect, std::size_t m, std::size_t n) : rect_(rect), m_(m), n_(n) {
  if (m < 2 || n < 2) throw ParameterError("grid needs at least 2 nodes per axis", "grid");
}

double GridSpec::x(std::size_t i) const {
  if (i + 1 == m_) return rect_.b;
  return rect_.a + static_cast<double>(i) * (rect_.b - rect_.a) / static_cast<double>(m_ - 1);
}

double GridSpec::y(std::size_t j) const {
  if (j + 1 == n_) return rect_.d;
  return rect_.c + static_cast<double>(j) * (rect_.d - rect_.c) / static_cast<double>(n_ - 1);
}

std::vector<double> GridSpec::xs() const {
  std::vector<double> out(m_);
  for (std::size_t i = 0; i < m_; ++i) out[i] = x(i);
  return out;
}

std::vector<double> GridSpec::ys() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = y(j);
  return out;
}

GridSamples::GridSamples(GridSpec spec, std::vector<double> values)
    : spec_(std::move(spec)), values_(std::move(values)) {
  if (values_.size() != spec_.size()) {
    throw ParameterError("grid sample count " + std::to_string(values_.size()) +
                         " does not match m*n = " + std::to_string(spec_.size()));
  }
  for (double v : values_) {
    if (!finite(v)) throw NumericError("grid samples must be finite");
  }
}

double GridSamples::min() const { return *std::min_element(values_.begin(), values_.end()); }
double GridSamples::max() const { return *std::max_element(values_.begin(), values_.end()); }

std::optional<double> FunctionSource::sup_bound(const Box&) const { return std::nullopt; }

double evaluate(const FunctionSource& f, double x, double y) {
  if (!f.domain().contains(x, y)) {
    throw DomainError("point (" + fmt(x) + ", " + fmt(y) + ") outside the domain of " + f.name());
  }
  return f(x, y);
}

SampledSource::SampledSource(GridSamples samples, std::string label)
    : samples_(std::move(samples)),
      xs_(samples_.spec().xs()),
      ys_(samples_.spec().ys()),
      label_(std::move(label)) {}

namespace {

// Index of the cell [nodes[k], nodes[k+1]] holding t, and the local weight.
std::pair<std::size_t, double> locate(const std::vector<double>& nodes, double t) {
  const std::size_t last = nodes.size() - 1;
  if (t <= nodes.front()) return {0, 0.0};
  if (t >= nodes.back()) return {last - 1, 1.0};
  const double h = (nodes.back() - nodes.front()) / static_cast<double>(last);
  auto k = static_cast<std::size_t>(std::clamp((t - nodes.front()) / h, 0.0, double(last - 1)));
  while (k > 0 && t < nodes[k]) --k;
  while (k + 1 < last && t >= nodes[k + 1]) ++k;
  return {k, (t - nodes[k]) / (nodes[k + 1] - nodes[k])};
}

}  // namespace

double SampledSource::operator()(double x, double y) const {
  const auto [i, s] = locate(xs_, x);
  const auto [j, t] = locate(ys_, y);
  const double v00 = samples_.at(i, j), v01 = samples_.at(i, j + 1);
  const double v10 = samples_.at(i + 1, j), v11 = samples_.at(i + 1, j + 1);
  const double lo = (1.0 - t) * v00 + t * v01;
  const double hi = (1.0 - t) * v10 + t * v11;
  return (1.0 - s) * lo + s * hi;
}

SourceProperties SampledSource::properties() const {
  // Piecewise bilinear: continuous, Lipschitz, bounded variation.
  return {true, true, 1.0};
}

std::optional<double> SampledSource::sup_bound(const Box&) const {
  return std::max(std::fabs(samples_.min()), std::fabs(samples_.max()));
}

ShiftedSource::ShiftedSource(SourcePtr inner, double dx, double dy)
    : inner_(std::move(inner)), dx_(dx), dy_(dy) {
  if (!inner_) throw ParameterError("shifted source needs an inner function");
}

std::string ShiftedSource::name() const {
  return inner_->name() + "@shift(" + fmt(dx_) + "," + fmt(dy_) + ")";
}

std::optional<double> ShiftedSource::sup_bound(const Box& box) const {
  return inner_->sup_bound(box.shifted(-dx_, -dy_));
}

GridSamples sample(const FunctionSource& f, const GridSpec& spec) {
  if (!f.domain().contains(spec.rect())) {
    throw DomainError("grid rectangle lies outside the domain of " + f.name());
  }
  const std::size_t m = spec.m(), n = spec.n();
  const auto xs = spec.xs();
  const auto ys = spec.ys();
  std::vector<double> values(m * n);
  parallel_for(0, m, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) values[i * n + j] = f(xs[i], ys[j]);
  });
  return GridSamples(spec, std::move(values));
}

double stable_sum(std::span<const double> terms) {
  CompensatedSum acc;
  for (double t : terms) {
    if (!finite(t)) throw NumericError("stable_sum: non-finite term");
    acc.add(t);
  }
  return acc.value();
}

}  // namespace fracdim2d
