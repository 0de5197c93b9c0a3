#pragma once

// Domain types shared by every module: rectangles, fractional orders,
// uniform grids, sampled data, evaluatable bivariate functions and
// compensated summation.

#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracdim2d/error.hpp"

namespace fracdim2d {

/// Closed axis-aligned box [a,b]x[c,d] with a<b and c<d. No sign constraint;
/// used for sampling, variation and box counting (the example constructions
/// live on [0,1]^2).
struct Box {
  double a = 0.0, b = 1.0, c = 0.0, d = 1.0;

  Box() = default;
  Box(double a_, double b_, double c_, double d_);

  double width() const { return b - a; }
  double height() const { return d - c; }
  /// Membership with a relative slack of 1e-12 of the side lengths.
  bool contains(double x, double y) const;
  bool contains(const Box& other) const;
  Box shifted(double dx, double dy) const { return {a + dx, b + dx, c + dy, d + dy}; }

  friend bool operator==(const Box&, const Box&) = default;
};

/// Operator domain: 0 < a < b and 0 < c < d. Every fractional integral is
/// taken over a Rectangle.
class Rectangle {
 public:
  Rectangle(double a, double b, double c, double d);
  explicit Rectangle(const Box& box) : Rectangle(box.a, box.b, box.c, box.d) {}

  double a() const { return box_.a; }
  double b() const { return box_.b; }
  double c() const { return box_.c; }
  double d() const { return box_.d; }
  const Box& box() const { return box_; }
  operator const Box&() const { return box_; }

  friend bool operator==(const Rectangle&, const Rectangle&) = default;

 private:
  Box box_;
};

/// Orders (alpha, beta) > 0 and exponents (p, q) > -1 of the mixed operator.
class FracOrder {
 public:
  FracOrder(double alpha, double beta, double p, double q);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double p() const { return p_; }
  double q() const { return q_; }

  friend bool operator==(const FracOrder&, const FracOrder&) = default;

 private:
  double alpha_, beta_, p_, q_;
};

/// Uniform endpoint-inclusive grid with m nodes along x and n along y.
class GridSpec {
 public:
  GridSpec(Box rect, std::size_t m, std::size_t n);

  const Box& rect() const { return rect_; }
  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t size() const { return m_ * n_; }
  double dx() const { return rect_.width() / static_cast<double>(m_ - 1); }
  double dy() const { return rect_.height() / static_cast<double>(n_ - 1); }
  /// x coordinate of node i; the last node is exactly b.
  double x(std::size_t i) const;
  double y(std::size_t j) const;
  std::vector<double> xs() const;
  std::vector<double> ys() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  Box rect_;
  std::size_t m_, n_;
};

/// Row-major samples: values[i*n + j] is the value at node (x_i, y_j).
class GridSamples {
 public:
  GridSamples(GridSpec spec, std::vector<double> values);

  const GridSpec& spec() const { return spec_; }
  std::span<const double> values() const { return values_; }
  double at(std::size_t i, std::size_t j) const { return values_[i * spec_.n() + j]; }
  double min() const;
  double max() const;

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

/// Qualitative facts about a function, used to gate pipelines and to pick
/// tolerances in the verification suites.
struct SourceProperties {
  bool continuous = true;
  bool bounded_variation = false;
  std::optional<double> holder_exponent;
};

/// An evaluatable bivariate function on a declared box. Implementations must
/// be pure and safe to call concurrently.
class FunctionSource {
 public:
  virtual ~FunctionSource() = default;

  /// Unchecked evaluation; callers guarantee (x,y) lies in domain().
  virtual double operator()(double x, double y) const = 0;
  virtual Box domain() const = 0;
  virtual std::string name() const = 0;
  virtual SourceProperties properties() const { return {}; }
  /// A bound M >= sup |f| over `box`, when one is known in closed form.
  virtual std::optional<double> sup_bound(const Box& box) const;
};

using SourcePtr = std::shared_ptr<const FunctionSource>;

/// Evaluation with a domain check.
double evaluate(const FunctionSource& f, double x, double y);

/// Bilinear interpolation of grid samples; reproduces node values exactly.
class SampledSource final : public FunctionSource {
 public:
  explicit SampledSource(GridSamples samples, std::string label = "sampled");

  double operator()(double x, double y) const override;
  Box domain() const override { return samples_.spec().rect(); }
  std::string name() const override { return label_; }
  SourceProperties properties() const override;
  std::optional<double> sup_bound(const Box& box) const override;
  const GridSamples& samples() const { return samples_; }

 private:
  GridSamples samples_;
  std::vector<double> xs_, ys_;
  std::string label_;
};

/// g(x,y) = f(x - dx, y - dy); moves a function to a translated domain.
class ShiftedSource final : public FunctionSource {
 public:
  ShiftedSource(SourcePtr inner, double dx, double dy);

  double operator()(double x, double y) const override { return (*inner_)(x - dx_, y - dy_); }
  Box domain() const override { return inner_->domain().shifted(dx_, dy_); }
  std::string name() const override;
  SourceProperties properties() const override { return inner_->properties(); }
  std::optional<double> sup_bound(const Box& box) const override;

 private:
  SourcePtr inner_;
  double dx_, dy_;
};

/// Samples `f` at every node of `spec`. Throws DomainError when the grid's
/// rectangle is not inside the source domain. Parallel over rows; the result
/// does not depend on the thread count.
GridSamples sample(const FunctionSource& f, const GridSpec& spec);

/// Running compensated sum (Neumaier's variant of Kahan summation).
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double v) {
    add(v);
    return *this;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Compensated summation of `terms` in the given order. Throws NumericError
/// on a non-finite term.
double stable_sum(std::span<const double> terms);

}  // namespace fracdim2d
