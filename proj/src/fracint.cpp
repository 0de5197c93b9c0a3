#include "fracdim2d/fracint.hpp"

#include <algorithm>
#include <cmath>

#include "fracdim2d/gamma.hpp"
#include "fracdim2d/parallel.hpp"

namespace fracdim2d {

namespace {

void require_quadrature_source(const FunctionSource& f, const Box& rect) {
  if (!f.properties().continuous) {
    throw ParameterError(f.name() + " is discontinuous and excluded from quadrature", "fn");
  }
  if (!f.domain().contains(rect)) {
    throw DomainError("rectangle lies outside the domain of " + f.name(), "rect");
  }
}

void require_point(const Rectangle& rect, double x, double y) {
  if (!rect.box().contains(x, y)) throw DomainError("(x, y) outside the integration rectangle");
}

// Integral over [lo, X] x [lo', Y] of K_x K_y f for every (X, Y) in xs x ys,
// where K are the axis kernels. Four blocks: background x background,
// background x y-tail, x-tail x background, x-tail x y-tail. The same code
// serves a single point, so grid and pointwise values agree bit for bit.
std::vector<double> tensor_integrate(const FunctionSource& f, const KernelAxis& ax, const KernelAxis& ay,
                                     std::span<const double> xs, std::span<const double> ys, double prefactor) {
  const std::size_t m = xs.size(), n = ys.size();
  std::vector<AxisTarget> tx(m), ty(n);
  parallel_for(0, m, [&](std::size_t i) { tx[i] = ax.target(xs[i]); });
  parallel_for(0, n, [&](std::size_t j) { ty[j] = ay.target(ys[j]); });

  std::size_t kx = 0, ky = 0;
  for (const auto& t : tx) kx = std::max(kx, t.bg_weights.size());
  for (const auto& t : ty) ky = std::max(ky, t.bg_weights.size());
  const auto bx = ax.background_points();
  const auto by = ay.background_points();

  std::vector<double> F(kx * ky);
  parallel_for(0, kx, [&](std::size_t k) {
    for (std::size_t l = 0; l < ky; ++l) F[k * ky + l] = f(bx[k], by[l]);
  });

  // Row i: sum over the x-points of node i (background, then tail) against
  // every y background point.
  std::vector<double> rows(m * ky, 0.0);
  parallel_for(0, m, [&](std::size_t i) {
    double* acc = &rows[i * ky];
    const auto& w = tx[i].bg_weights;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double wk = w[k];
      const double* fk = &F[k * ky];
      for (std::size_t l = 0; l < ky; ++l) acc[l] += wk * fk[l];
    }
    for (std::size_t k = 0; k < tx[i].tail_points.size(); ++k) {
      const double wk = tx[i].tail_weights[k];
      const double sx = tx[i].tail_points[k];
      for (std::size_t l = 0; l < ky; ++l) acc[l] += wk * f(sx, by[l]);
    }
  });

  // Column j: the y-tail of node j contracted against every x background point.
  std::vector<double> cols(n * kx, 0.0);
  parallel_for(0, n, [&](std::size_t j) {
    const auto& pts = ty[j].tail_points;
    const auto& wts = ty[j].tail_weights;
    if (pts.empty()) return;
    double* acc = &cols[j * kx];
    for (std::size_t k = 0; k < kx; ++k) {
      double s = 0.0;
      for (std::size_t l = 0; l < pts.size(); ++l) s += wts[l] * f(bx[k], pts[l]);
      acc[k] = s;
    }
  });

  std::vector<double> out(m * n);
  parallel_for(0, m, [&](std::size_t i) {
    const double* row = &rows[i * ky];
    const auto& wx = tx[i].bg_weights;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& wy = ty[j].bg_weights;
      double b1 = 0.0;
      for (std::size_t l = 0; l < wy.size(); ++l) b1 += row[l] * wy[l];
      double b2 = 0.0;
      if (!ty[j].tail_points.empty()) {
        const double* col = &cols[j * kx];
        for (std::size_t k = 0; k < wx.size(); ++k) b2 += wx[k] * col[k];
      }
      double b3 = 0.0;
      for (std::size_t k = 0; k < tx[i].tail_points.size(); ++k) {
        double s = 0.0;
        for (std::size_t l = 0; l < ty[j].tail_points.size(); ++l) {
          s += ty[j].tail_weights[l] * f(tx[i].tail_points[k], ty[j].tail_points[l]);
        }
        b3 += tx[i].tail_weights[k] * s;
      }
      CompensatedSum total;
      total += b1;
      total += b2;
      total += b3;
      out[i * n + j] = prefactor * total.value();
    }
  });
  return out;
}

double katugampola_prefactor(const FracOrder& ord) {
  return std::pow(ord.p() + 1.0, -ord.alpha()) * std::pow(ord.q() + 1.0, -ord.beta()) /
         (special::gamma(ord.alpha()) * special::gamma(ord.beta()));
}

struct Axes {
  KernelAxis x, y;
};

Axes katugampola_axes(const Rectangle& rect, const FracOrder& ord, const QuadratureSpec& quad) {
  return {KernelAxis(AxisTransform::power(ord.p() + 1.0), rect.a(), rect.b(), ord.alpha(), quad),
          KernelAxis(AxisTransform::power(ord.q() + 1.0), rect.c(), rect.d(), ord.beta(), quad)};
}

Axes hadamard_axes(const Rectangle& rect, double alpha, double beta, const QuadratureSpec& quad) {
  return {KernelAxis(AxisTransform::log(), rect.a(), rect.b(), alpha, quad),
          KernelAxis(AxisTransform::log(), rect.c(), rect.d(), beta, quad)};
}

void require_orders(double alpha, double beta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be > 0", "alpha");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be > 0", "beta");
}

}  // namespace

double katugampola_1d(const UnivariateFn& g, double a, double x, double alpha, double p,
                      const QuadratureSpec& quad) {
  quad.validate();
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be > 0", "alpha");
  if (!(p > -1.0) || !std::isfinite(p)) throw ParameterError("p must be > -1", "p");
  if (!(a > 0.0)) throw DomainError("lower limit must be > 0", "a");
  if (!(x >= a)) throw DomainError("x must not be below the lower limit", "x");
  if (x == a) return 0.0;
  const KernelAxis axis(AxisTransform::power(p + 1.0), a, x, alpha, quad);
  const AxisTarget t = axis.target(x);
  const auto pts = axis.background_points();
  double sum = 0.0;
  for (std::size_t k = 0; k < t.bg_weights.size(); ++k) sum += t.bg_weights[k] * g(pts[k]);
  CompensatedSum total;
  total += sum;
  double tail = 0.0;
  for (std::size_t k = 0; k < t.tail_points.size(); ++k) tail += t.tail_weights[k] * g(t.tail_points[k]);
  total += tail;
  return std::pow(p + 1.0, -alpha) / special::gamma(alpha) * total.value();
}

double katugampola_2d(const FunctionSource& f, const Rectangle& rect, double x, double y, const FracOrder& ord,
                      const QuadratureSpec& quad) {
  quad.validate();
  require_quadrature_source(f, rect);
  require_point(rect, x, y);
  const Axes axes = katugampola_axes(rect, ord, quad);
  const double xs[] = {x};
  const double ys[] = {y};
  return tensor_integrate(f, axes.x, axes.y, xs, ys, katugampola_prefactor(ord))[0];
}

GridSamples katugampola_2d_grid(const FunctionSource& f, const GridSpec& spec, const FracOrder& ord,
                                const QuadratureSpec& quad) {
  quad.validate();
  const Rectangle rect(spec.rect());
  require_quadrature_source(f, rect);
  const Axes axes = katugampola_axes(rect, ord, quad);
  const auto xs = spec.xs();
  const auto ys = spec.ys();
  return GridSamples(spec, tensor_integrate(f, axes.x, axes.y, xs, ys, katugampola_prefactor(ord)));
}

namespace {

double rl_point(const FunctionSource& f, const Rectangle& rect, double x, double y, double alpha, double beta,
                const Rule& rx, const Rule& ry) {
  if (x == rect.a() || y == rect.c()) return 0.0;
  const double hx = 0.5 * (x - rect.a());
  const double hy = 0.5 * (y - rect.c());
  std::vector<double> ty(ry.nodes.size());
  for (std::size_t l = 0; l < ty.size(); ++l) ty[l] = rect.c() + hy * (1.0 + ry.nodes[l]);
  CompensatedSum total;
  for (std::size_t k = 0; k < rx.nodes.size(); ++k) {
    const double s = rect.a() + hx * (1.0 + rx.nodes[k]);
    double inner = 0.0;
    for (std::size_t l = 0; l < ty.size(); ++l) inner += ry.weights[l] * f(s, ty[l]);
    total += rx.weights[k] * inner;
  }
  return std::pow(hx, alpha) * std::pow(hy, beta) * total.value() /
         (special::gamma(alpha) * special::gamma(beta));
}

}  // namespace

double riemann_liouville_2d(const FunctionSource& f, const Rectangle& rect, double x, double y, double alpha,
                            double beta, const QuadratureSpec& quad) {
  quad.validate();
  require_orders(alpha, beta);
  require_quadrature_source(f, rect);
  require_point(rect, x, y);
  const Rule rx = gauss_jacobi(quad.panels, alpha - 1.0, 0.0);
  const Rule ry = gauss_jacobi(quad.panels, beta - 1.0, 0.0);
  return rl_point(f, rect, std::clamp(x, rect.a(), rect.b()), std::clamp(y, rect.c(), rect.d()), alpha, beta, rx,
                  ry);
}

GridSamples riemann_liouville_2d_grid(const FunctionSource& f, const GridSpec& spec, double alpha, double beta,
                                      const QuadratureSpec& quad) {
  quad.validate();
  require_orders(alpha, beta);
  const Rectangle rect(spec.rect());
  require_quadrature_source(f, rect);
  const Rule rx = gauss_jacobi(quad.panels, alpha - 1.0, 0.0);
  const Rule ry = gauss_jacobi(quad.panels, beta - 1.0, 0.0);
  const auto xs = spec.xs();
  const auto ys = spec.ys();
  std::vector<double> out(spec.size());
  parallel_for(0, spec.m(), [&](std::size_t i) {
    for (std::size_t j = 0; j < spec.n(); ++j) out[i * spec.n() + j] = rl_point(f, rect, xs[i], ys[j], alpha, beta, rx, ry);
  });
  return GridSamples(spec, std::move(out));
}

double hadamard_2d(const FunctionSource& f, const Rectangle& rect, double x, double y, double alpha, double beta,
                   const QuadratureSpec& quad) {
  quad.validate();
  require_orders(alpha, beta);
  require_quadrature_source(f, rect);
  require_point(rect, x, y);
  const Axes axes = hadamard_axes(rect, alpha, beta, quad);
  const double xs[] = {x};
  const double ys[] = {y};
  const double pref = 1.0 / (special::gamma(alpha) * special::gamma(beta));
  return tensor_integrate(f, axes.x, axes.y, xs, ys, pref)[0];
}

GridSamples hadamard_2d_grid(const FunctionSource& f, const GridSpec& spec, double alpha, double beta,
                             const QuadratureSpec& quad) {
  quad.validate();
  require_orders(alpha, beta);
  const Rectangle rect(spec.rect());
  require_quadrature_source(f, rect);
  const Axes axes = hadamard_axes(rect, alpha, beta, quad);
  const auto xs = spec.xs();
  const auto ys = spec.ys();
  const double pref = 1.0 / (special::gamma(alpha) * special::gamma(beta));
  return GridSamples(spec, tensor_integrate(f, axes.x, axes.y, xs, ys, pref));
}

double SemigroupResult::sup_gap() const {
  double gap = 0.0;
  const auto l = lhs.values();
  const auto r = rhs.values();
  for (std::size_t k = 0; k < l.size(); ++k) gap = std::max(gap, std::fabs(l[k] - r[k]));
  return gap;
}

SemigroupResult compose_semigroup(const FunctionSource& f, const GridSpec& spec, const FracOrder& ord1,
                                  const FracOrder& ord2, const QuadratureSpec& quad) {
  if (ord1.p() != ord2.p() || ord1.q() != ord2.q()) {
    throw ParameterError("semigroup composition needs equal (p, q) in both orders", "p");
  }
  quad.validate();
  const GridSpec inner_spec(spec.rect(), 2 * static_cast<std::size_t>(quad.panels) + 1,
                            2 * static_cast<std::size_t>(quad.panels) + 1);
  const GridSamples inner = katugampola_2d_grid(f, inner_spec, ord2, quad);
  const SampledSource interpolated(inner, "inner");
  GridSamples lhs = katugampola_2d_grid(interpolated, spec, ord1, quad);
  const FracOrder sum(ord1.alpha() + ord2.alpha(), ord1.beta() + ord2.beta(), ord1.p(), ord1.q());
  GridSamples rhs = katugampola_2d_grid(f, spec, sum, quad);
  return {std::move(lhs), std::move(rhs), inner_spec};
}

double boundedness_bound(const Rectangle& rect, const FracOrder& ord, double M) {
  const double p1 = ord.p() + 1.0, q1 = ord.q() + 1.0;
  const double sx = std::pow(rect.b(), p1) - std::pow(rect.a(), p1);
  const double sy = std::pow(rect.d(), q1) - std::pow(rect.c(), q1);
  return M * std::pow(p1, -ord.alpha()) * std::pow(q1, -ord.beta()) * std::pow(sx, ord.alpha()) *
         std::pow(sy, ord.beta()) / (special::gamma(ord.alpha() + 1.0) * special::gamma(ord.beta() + 1.0));
}

double error_budget(const Rectangle& rect, const FracOrder& ord, const QuadratureSpec& quad, double M) {
  const ErrorBudget bx = calibrate_budget(ord.alpha(), quad);
  const ErrorBudget by = calibrate_budget(ord.beta(), quad);
  return boundedness_bound(rect, ord, M) * (bx.at(quad.panels) + by.at(quad.panels));
}

BoundCertificate boundedness_certificate(const FunctionSource& f, const GridSpec& spec, const FracOrder& ord,
                                         const QuadratureSpec& quad, double M) {
  const Rectangle rect(spec.rect());
  if (!(M >= 0.0) || !std::isfinite(M)) throw ParameterError("M must be a finite non-negative bound", "M");
  const GridSamples fs = sample(f, spec);
  const double fmax = std::max(std::fabs(fs.min()), std::fabs(fs.max()));
  if (fmax > M) {
    throw ParameterError("M = " + std::to_string(M) + " is below max |f| = " + std::to_string(fmax) + " on the grid",
                         "M");
  }
  const GridSamples integral = katugampola_2d_grid(f, spec, ord, quad);
  BoundCertificate cert;
  cert.bound = boundedness_bound(rect, ord, M);
  cert.sup_abs_observed = std::max(std::fabs(integral.min()), std::fabs(integral.max()));
  cert.tolerance = error_budget(rect, ord, quad, M);
  return cert;
}

}  // namespace fracdim2d
