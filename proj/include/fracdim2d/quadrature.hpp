#pragma once

// Product integration for weakly singular Abel-type kernels on one axis.
//
// Every operator in fracint reduces, per axis, to integrals of the form
//
//     int_{U0}^{X} (X - u)^(order-1) g(u) du
//
// in a transformed coordinate u (u = s^(p+1) for the Katugampola family,
// u = log s for Hadamard). A KernelAxis lays a fixed background partition
// over the axis range [U0, U1] and, for a target X, returns weights on the
// Gauss points of every background panel left of X plus the points of one
// tail panel [u_k, X]. Kernel moments against the local interpolation basis
// are exact on the panel touching X and resolved by a 24-point Gauss rule on
// the others, so g is only ever sampled at panel Gauss points.

#include <cstddef>
#include <span>
#include <vector>

#include "fracdim2d/error.hpp"

namespace fracdim2d {

/// Discretization controls for the product-integration operators.
struct QuadratureSpec {
  /// Background panels per axis (>= 4).
  int panels = 64;
  /// Background breakpoints sit at U0 + (U1-U0)(k/panels)^grading; values
  /// above 1 cluster panels toward the lower limit, where composed integrals
  /// carry their algebraic endpoint behaviour.
  double grading = 1.0;
  /// Gauss-Legendre points per panel (1..8); 1 is the product midpoint rule.
  int points = 4;

  void validate() const;
};

/// Quadrature rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule for the weight (1-t)^a (1+t)^b, a,b > -1, via the
/// Golub-Welsch eigenvalue method. Nodes ascending.
Rule gauss_jacobi(int n, double a, double b);
Rule gauss_legendre(int n);

/// Change of variable between a physical coordinate s and the integration
/// coordinate u.
class AxisTransform {
 public:
  /// u = s^exponent (exponent = p+1 > 0).
  static AxisTransform power(double exponent);
  /// u = log s.
  static AxisTransform log();

  double forward(double s) const;
  double backward(double u) const;

 private:
  enum class Kind { Power, Log };
  AxisTransform(Kind k, double e) : kind_(k), exponent_(e) {}
  Kind kind_;
  double exponent_;
};

/// Weights of the kernel (X-u)^(order-1) against the Lagrange basis on the
/// Gauss-Legendre points of a reference panel [-1, 1] whose right end sits
/// at relative distance rho >= 1 from the singular point.
class PanelMoments {
 public:
  PanelMoments(double order, int points);

  int points() const { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const { return nodes_; }
  /// out[j] = int_{-1}^{1} (1 + gap - t)^(order-1) l_j(t) dt, gap >= 0.
  void weights(double gap, std::span<double> out) const;

 private:
  void near_weights(double rho, std::span<double> out) const;
  void far_weights(double rho, std::span<double> out) const;

  double order_;
  std::vector<double> nodes_, gauss_weights_;
  std::vector<long double> inv_vandermonde_;  // row-major points x points
  std::vector<double> far_nodes_, far_weights_;
  std::vector<double> lagrange_at_far_;  // points x far nodes
};

/// Weights of one target X on a KernelAxis.
struct AxisTarget {
  /// Weights on background_points()[0 .. bg_weights.size()).
  std::vector<double> bg_weights;
  /// Physical coordinates and weights of the tail panel [u_k, X]; empty when
  /// X is a background breakpoint.
  std::vector<double> tail_points;
  std::vector<double> tail_weights;
};

class KernelAxis {
 public:
  /// Axis over physical [lo, hi] with kernel exponent order-1.
  KernelAxis(AxisTransform transform, double lo, double hi, double order, const QuadratureSpec& spec);

  /// Physical coordinates of all background Gauss points, ascending.
  std::span<const double> background_points() const { return bg_points_; }
  /// Weights for int_{U(lo)}^{U(s)} (U(s)-u)^(order-1) g(u) du ~ sum w g.
  AxisTarget target(double s) const;
  /// Distance U(s) - U(lo) in the integration coordinate.
  double span_to(double s) const { return transform_.forward(s) - u_lo_; }
  const AxisTransform& transform() const { return transform_; }

 private:
  AxisTransform transform_;
  double lo_, hi_, u_lo_, u_hi_, order_;
  int points_;
  std::vector<double> breaks_;  // panels + 1 breakpoints in u
  std::vector<double> bg_points_;
  PanelMoments moments_;
};

/// Self-calibrated discretization error model eps(P) = C * P^-rate for one
/// axis, fitted on the closed form int_0^X (X-u)^(order-1) e^u du =
/// e^X gamma(order, X) at P in {4, 8, 16}. Relative to the magnitude of the
/// integral.
struct ErrorBudget {
  double constant = 0.0;
  double rate = 0.0;
  double at(int panels) const;
};

ErrorBudget calibrate_budget(double order, const QuadratureSpec& spec);

}  // namespace fracdim2d
