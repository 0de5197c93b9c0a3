#include "fracdim2d/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "fracdim2d/gamma.hpp"

namespace fracdim2d {

void QuadratureSpec::validate() const {
  if (panels < 4) throw ParameterError("quadrature needs at least 4 panels", "panels");
  if (!(grading >= 1.0) || !std::isfinite(grading)) throw ParameterError("grading must be >= 1", "grading");
  if (points < 1 || points > 8) throw ParameterError("points per panel must be in 1..8", "points");
}

namespace {

// Legendre P_n(t) and its derivative by the three-term recurrence.
std::pair<double, double> legendre(int n, double t) {
  double p0 = 1.0, p1 = t;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (t * p1 - p0) / (t * t - 1.0)};
}

}  // namespace

Rule gauss_legendre(int n) {
  if (n < 1) throw ParameterError("Gauss-Legendre rule needs n >= 1");
  if (n == 1) return {{0.0}, {2.0}};
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, t);
      const double step = p / dp;
      t -= step;
      if (std::fabs(step) < 1e-16) break;
    }
    const double dp = legendre(n, t).second;
    const double w = 2.0 / ((1.0 - t * t) * dp * dp);
    r.nodes[i] = -t;
    r.nodes[n - 1 - i] = t;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

Rule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw ParameterError("Gauss-Jacobi rule needs n >= 1");
  if (!(a > -1.0) || !(b > -1.0)) throw ParameterError("Jacobi exponents must exceed -1");
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  const double ab = a + b;
  diag(0) = (b - a) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    double beta;
    if (k == 1) {
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(k - 1) = std::sqrt(beta);
  }
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                              std::lgamma(ab + 2.0));
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  if (n == 1) {
    r.nodes[0] = diag(0);
    r.weights[0] = mu0;
    return r;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericError("Gauss-Jacobi eigenvalue solve failed");
  for (int k = 0; k < n; ++k) {
    r.nodes[k] = solver.eigenvalues()(k);
    const double v0 = solver.eigenvectors()(0, k);
    r.weights[k] = mu0 * v0 * v0;
  }
  return r;
}

AxisTransform AxisTransform::power(double exponent) {
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw ParameterError("power transform needs a positive exponent");
  }
  return {Kind::Power, exponent};
}

AxisTransform AxisTransform::log() { return {Kind::Log, 0.0}; }

double AxisTransform::forward(double s) const {
  if (kind_ == Kind::Log) return std::log(s);
  return exponent_ == 1.0 ? s : std::pow(s, exponent_);
}

double AxisTransform::backward(double u) const {
  if (kind_ == Kind::Log) return std::exp(u);
  return exponent_ == 1.0 ? u : std::pow(u, 1.0 / exponent_);
}

namespace {

constexpr int kFarPoints = 24;
// Panels whose right end lies within one half-width of the singular point
// use closed-form moments; beyond that the kernel is smooth enough for the
// 24-point rule to reach double precision.
constexpr double kNearGap = 1.0;

std::vector<long double> invert(std::vector<long double> a, int n) {
  std::vector<long double> inv(n * n, 0.0L);
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1.0L;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::fabs(a[r * n + col]) > std::fabs(a[piv * n + col])) piv = r;
    }
    if (piv != col) {
      for (int k = 0; k < n; ++k) {
        std::swap(a[col * n + k], a[piv * n + k]);
        std::swap(inv[col * n + k], inv[piv * n + k]);
      }
    }
    const long double d = a[col * n + col];
    for (int k = 0; k < n; ++k) {
      a[col * n + k] /= d;
      inv[col * n + k] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const long double f = a[r * n + col];
      if (f == 0.0L) continue;
      for (int k = 0; k < n; ++k) {
        a[r * n + k] -= f * a[col * n + k];
        inv[r * n + k] -= f * inv[col * n + k];
      }
    }
  }
  return inv;
}

}  // namespace

PanelMoments::PanelMoments(double order, int points) : order_(order) {
  if (!(order > 0.0)) throw ParameterError("kernel order must be > 0");
  const Rule gl = gauss_legendre(points);
  nodes_ = gl.nodes;
  gauss_weights_ = gl.weights;

  std::vector<long double> vdm(points * points);
  for (int k = 0; k < points; ++k) {
    for (int j = 0; j < points; ++j) vdm[k * points + j] = std::pow(static_cast<long double>(nodes_[j]), k);
  }
  inv_vandermonde_ = invert(std::move(vdm), points);

  const Rule far = gauss_legendre(kFarPoints);
  far_nodes_ = far.nodes;
  far_weights_ = far.weights;
  lagrange_at_far_.resize(points * kFarPoints);
  for (int j = 0; j < points; ++j) {
    for (int g = 0; g < kFarPoints; ++g) {
      double l = 1.0;
      for (int i = 0; i < points; ++i) {
        if (i != j) l *= (far_nodes_[g] - nodes_[i]) / (nodes_[j] - nodes_[i]);
      }
      lagrange_at_far_[j * kFarPoints + g] = l;
    }
  }
}

void PanelMoments::weights(double gap, std::span<double> out) const {
  if (order_ == 1.0) {
    std::copy(gauss_weights_.begin(), gauss_weights_.end(), out.begin());
  } else if (gap <= kNearGap) {
    near_weights(gap, out);
  } else {
    far_weights(gap, out);
  }
}

void PanelMoments::near_weights(double gap, std::span<double> out) const {
  // With w = rho - t:  M_k = int (rho-t)^(order-1) t^k dt
  //   = sum_i C(k,i) rho^(k-i) (-1)^i [w^(order+i)/(order+i)]_{rho-1}^{rho+1}.
  const int q = points();
  const long double a = order_;
  const long double g = gap;
  const long double rho = 1.0L + g;
  std::vector<long double> prim(q), mom(q, 0.0L);
  for (int i = 0; i < q; ++i) {
    const long double e = a + i;
    const long double lo = (g == 0.0L) ? 0.0L : std::pow(g, e);
    prim[i] = (std::pow(rho + 1.0L, e) - lo) / e;
  }
  for (int k = 0; k < q; ++k) {
    long double binom = 1.0L;
    long double acc = 0.0L;
    for (int i = 0; i <= k; ++i) {
      const long double term = binom * std::pow(rho, static_cast<long double>(k - i)) * prim[i];
      acc += (i % 2 == 0) ? term : -term;
      binom = binom * (k - i) / (i + 1);
    }
    mom[k] = acc;
  }
  for (int j = 0; j < q; ++j) {
    long double w = 0.0L;
    for (int k = 0; k < q; ++k) w += inv_vandermonde_[j * q + k] * mom[k];
    out[j] = static_cast<double>(w);
  }
}

void PanelMoments::far_weights(double gap, std::span<double> out) const {
  const double rho = 1.0 + gap;
  double kern[kFarPoints];
  for (int g = 0; g < kFarPoints; ++g) {
    kern[g] = far_weights_[g] * std::pow(rho - far_nodes_[g], order_ - 1.0);
  }
  for (int j = 0; j < points(); ++j) {
    double w = 0.0;
    const double* l = &lagrange_at_far_[j * kFarPoints];
    for (int g = 0; g < kFarPoints; ++g) w += kern[g] * l[g];
    out[j] = w;
  }
}

KernelAxis::KernelAxis(AxisTransform transform, double lo, double hi, double order, const QuadratureSpec& spec)
    : transform_(transform),
      lo_(lo),
      hi_(hi),
      u_lo_(transform.forward(lo)),
      u_hi_(transform.forward(hi)),
      order_(order),
      points_(spec.points),
      moments_(order, spec.points) {
  spec.validate();
  if (!(lo < hi)) throw ParameterError("axis needs lo < hi");
  const int P = spec.panels;
  breaks_.resize(P + 1);
  for (int k = 0; k < P; ++k) {
    const double frac = static_cast<double>(k) / P;
    breaks_[k] = u_lo_ + (u_hi_ - u_lo_) * (spec.grading == 1.0 ? frac : std::pow(frac, spec.grading));
  }
  breaks_[P] = u_hi_;
  const auto nodes = moments_.nodes();
  bg_points_.reserve(static_cast<std::size_t>(P) * points_);
  for (int k = 0; k < P; ++k) {
    const double c = 0.5 * (breaks_[k] + breaks_[k + 1]);
    const double hh = 0.5 * (breaks_[k + 1] - breaks_[k]);
    for (double t : nodes) bg_points_.push_back(transform_.backward(c + hh * t));
  }
}

AxisTarget KernelAxis::target(double s) const {
  const double slack = 1e-12 * (hi_ - lo_);
  if (s < lo_ - slack || s > hi_ + slack) throw DomainError("integration limit outside the axis range");
  const double X = std::clamp(s <= lo_ ? u_lo_ : (s >= hi_ ? u_hi_ : transform_.forward(s)), u_lo_, u_hi_);

  AxisTarget out;
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), X);
  const std::size_t full = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  const std::size_t q = static_cast<std::size_t>(points_);
  out.bg_weights.resize(full * q);
  for (std::size_t k = 0; k < full; ++k) {
    const double h = breaks_[k + 1] - breaks_[k];
    const double gap = 2.0 * (X - breaks_[k + 1]) / h;
    moments_.weights(gap, std::span<double>(out.bg_weights).subspan(k * q, q));
    const double scale = std::pow(0.5 * h, order_);
    for (std::size_t j = 0; j < q; ++j) out.bg_weights[k * q + j] *= scale;
  }
  if (full + 1 < breaks_.size() && X > breaks_[full]) {
    const double h = X - breaks_[full];
    const double c = breaks_[full] + 0.5 * h;
    out.tail_points.resize(q);
    out.tail_weights.resize(q);
    moments_.weights(0.0, out.tail_weights);
    const double scale = std::pow(0.5 * h, order_);
    const auto nodes = moments_.nodes();
    for (std::size_t j = 0; j < q; ++j) {
      out.tail_weights[j] *= scale;
      out.tail_points[j] = transform_.backward(c + 0.5 * h * nodes[j]);
    }
  }
  return out;
}

double ErrorBudget::at(int panels) const {
  return std::max(constant * std::pow(static_cast<double>(panels), -rate), 1e-14);
}

ErrorBudget calibrate_budget(double order, const QuadratureSpec& spec) {
  spec.validate();
  // Two targets: a breakpoint (no tail panel) and an interior point.
  const double targets[] = {1.0, 0.7};
  const int levels[] = {4, 8, 16};
  double err[3] = {0.0, 0.0, 0.0};
  for (int li = 0; li < 3; ++li) {
    QuadratureSpec s = spec;
    s.panels = levels[li];
    const KernelAxis axis(AxisTransform::power(1.0), 0.0, 1.0, order, s);
    for (double X : targets) {
      const double exact = std::exp(X) * special::lower_incomplete_gamma(order, X);
      const AxisTarget t = axis.target(X);
      double sum = 0.0;
      const auto pts = axis.background_points();
      for (std::size_t k = 0; k < t.bg_weights.size(); ++k) sum += t.bg_weights[k] * std::exp(pts[k]);
      for (std::size_t k = 0; k < t.tail_weights.size(); ++k) sum += t.tail_weights[k] * std::exp(t.tail_points[k]);
      err[li] = std::max(err[li], std::max(std::fabs(sum - exact) / exact, 1e-16));
    }
  }
  // Least-squares slope of log err against log P.
  double mx = 0.0, my = 0.0;
  for (int li = 0; li < 3; ++li) {
    mx += std::log(levels[li]) / 3.0;
    my += std::log(err[li]) / 3.0;
  }
  double sxy = 0.0, sxx = 0.0;
  for (int li = 0; li < 3; ++li) {
    const double dx = std::log(levels[li]) - mx;
    sxy += dx * (std::log(err[li]) - my);
    sxx += dx * dx;
  }
  ErrorBudget b;
  b.rate = std::max(-sxy / sxx, 0.5);
  b.constant = 0.0;
  for (int li = 0; li < 3; ++li) b.constant = std::max(b.constant, 4.0 * err[li] * std::pow(levels[li], b.rate));
  return b;
}

}  // namespace fracdim2d
