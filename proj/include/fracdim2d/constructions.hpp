#pragma once

// The piecewise limit construction T built from a generating function phi,
// and the builtin catalog of test surfaces.

#include <string>
#include <vector>

#include "fracdim2d/core.hpp"

namespace fracdim2d {

/// a_n = a + (b-a)(1 - 2^-n); a_0 = a.
double sequence_point(int n, double a, double b);

/// Affine map of the piece [a_{n-1}, a_n] onto [a_0, a_1]:
///   2^n [(a_1 - a_0) x + a_0 a_n - a_1 a_{n-1}] / (b - a).
/// Throws DomainError when x is outside the piece.
double psi_n(double x, int n, double a, double b);

/// T(x,y) = F_k(x,y) = (1/k) phi(psi_k(x), y) + ((k-1)/k) phi(a_0, y) on the
/// piece [a_{k-1}, a_k] x [c, d]; past a_depth (and at x = b) the limit value
/// phi(a_0, y).
class TConstruction final : public FunctionSource {
 public:
  static constexpr int kDefaultDepth = 24;

  /// Throws ParameterError when phi does not cover [a_0, a_1] x [c, d] or
  /// violates phi(a_0, y) = phi(a_1, y) on a 257-point verification grid.
  TConstruction(Box rect, SourcePtr phi, int depth = kDefaultDepth, std::string label = "");

  double operator()(double x, double y) const override;
  Box domain() const override { return rect_; }
  std::string name() const override;
  SourceProperties properties() const override;
  std::optional<double> sup_bound(const Box& box) const override;

  /// Checked evaluation.
  double t_eval(double x, double y) const { return evaluate(*this, x, y); }
  /// Piece index k with x in [a_{k-1}, a_k]; depth + 1 for the tail.
  int piece(double x) const;
  /// F_k at (x, y) for x inside piece k.
  double piece_value(int k, double x, double y) const;

  int depth() const { return depth_; }
  const FunctionSource& phi() const { return *phi_; }

 private:
  Box rect_;
  SourcePtr phi_;
  int depth_;
  std::string label_;
};

struct CatalogEntry {
  std::string name;
  std::string parameters;  // "k=1", "lambda=2,s=2.5,K=12", ...
  std::string description;
  Box domain;
  SourceProperties flags;
  bool known_sup = false;
};

const std::vector<CatalogEntry>& catalog_entries();

/// Named builtin source. Throws CatalogError for unknown names and
/// ParameterError for bad parameter lists.
SourcePtr catalog(const std::string& name, const std::vector<double>& params = {});

/// "name", "name:p1,p2,...", "csv:path" or "json:path".
SourcePtr parse_function_spec(const std::string& spec);

/// True when some p/q with q <= max_den rounds exactly to x.
bool is_representable_rational(double x, long long max_den = 1000000);

}  // namespace fracdim2d
