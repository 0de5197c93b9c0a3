#pragma once

// Mixed (left-sided) Katugampola fractional integral of bivariate functions,
// its univariate counterpart, the Riemann-Liouville and Hadamard special
// cases, semigroup composition and the explicit boundedness certificate.

#include <functional>

#include "fracdim2d/core.hpp"
#include "fracdim2d/quadrature.hpp"

namespace fracdim2d {

using UnivariateFn = std::function<double(double)>;

/// Univariate Katugampola integral
///   ((p+1)^(1-alpha)/Gamma(alpha)) int_a^x (x^(p+1)-t^(p+1))^(alpha-1) t^p g(t) dt
/// evaluated in u = t^(p+1) by product integration.
double katugampola_1d(const UnivariateFn& g, double a, double x, double alpha, double p,
                      const QuadratureSpec& quad);

/// Mixed Katugampola integral of f at (x, y) in rect.
double katugampola_2d(const FunctionSource& f, const Rectangle& rect, double x, double y, const FracOrder& ord,
                      const QuadratureSpec& quad);

/// The mixed integral at every node of `spec` (whose box must be a valid
/// Rectangle). Node values are bit-identical to katugampola_2d at the same
/// point and independent of the thread count.
GridSamples katugampola_2d_grid(const FunctionSource& f, const GridSpec& spec, const FracOrder& ord,
                                const QuadratureSpec& quad);

/// Mixed Riemann-Liouville integral by a tensor Gauss-Jacobi rule with
/// quad.panels nodes per axis and no change of variable. Shares no code path
/// with the Katugampola evaluator beyond the Gamma function.
double riemann_liouville_2d(const FunctionSource& f, const Rectangle& rect, double x, double y, double alpha,
                            double beta, const QuadratureSpec& quad);
GridSamples riemann_liouville_2d_grid(const FunctionSource& f, const GridSpec& spec, double alpha, double beta,
                                      const QuadratureSpec& quad);

/// Mixed Hadamard integral
///   (1/(Gamma(alpha)Gamma(beta))) int int (log x/s)^(alpha-1) (log y/t)^(beta-1) f(s,t)/(st) ds dt
/// evaluated in u = log s, v = log t.
double hadamard_2d(const FunctionSource& f, const Rectangle& rect, double x, double y, double alpha, double beta,
                   const QuadratureSpec& quad);
GridSamples hadamard_2d_grid(const FunctionSource& f, const GridSpec& spec, double alpha, double beta,
                             const QuadratureSpec& quad);

struct SemigroupResult {
  GridSamples lhs;   // I^(ord1) applied to the interpolated I^(ord2) f
  GridSamples rhs;   // I^(ord1 + ord2) f
  GridSpec inner;    // grid on which I^(ord2) f was materialized
  double sup_gap() const;
};

/// Both sides of the semigroup law on `spec`. The inner integral is
/// materialized on a (2 panels+1)^2 grid over spec's rectangle and
/// re-interpolated bilinearly. Throws ParameterError when the exponents
/// (p, q) of the two orders differ.
SemigroupResult compose_semigroup(const FunctionSource& f, const GridSpec& spec, const FracOrder& ord1,
                                  const FracOrder& ord2, const QuadratureSpec& quad);

/// The explicit bound
///   M (p+1)^-alpha (q+1)^-beta (b^(p+1)-a^(p+1))^alpha (d^(q+1)-c^(q+1))^beta
///     / (Gamma(alpha+1) Gamma(beta+1))
/// on |I f| for |f| <= M.
double boundedness_bound(const Rectangle& rect, const FracOrder& ord, double M);

/// Absolute discretization budget of the Katugampola evaluator for a
/// function bounded by M: the bound above times the per-axis calibrated
/// relative budgets.
double error_budget(const Rectangle& rect, const FracOrder& ord, const QuadratureSpec& quad, double M);

struct BoundCertificate {
  double bound = 0.0;
  double sup_abs_observed = 0.0;
  double tolerance = 0.0;
  bool holds() const { return sup_abs_observed <= bound + tolerance; }
};

/// Evaluates the integral on `spec` and compares its sup norm with the
/// explicit bound. Throws ParameterError when M is below max |f| on the grid.
BoundCertificate boundedness_certificate(const FunctionSource& f, const GridSpec& spec, const FracOrder& ord,
                                         const QuadratureSpec& quad, double M);

}  // namespace fracdim2d
