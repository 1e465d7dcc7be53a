#pragma once

#include <cmath>
#include <functional>
#include <utility>

#include "numscale/core.hpp"
#include "numscale/fields.hpp"
#include "numscale/path.hpp"
#include "numscale/quadrature.hpp"

namespace numscale {

/// Pointwise metric tensor g_{mu nu}. Symmetry is enforced on evaluation.
class Metric {
public:
  using EvalFn = std::function<Mat(const Point&)>;

  Metric(int dim, EvalFn eval) : dim_(dim), eval_(std::move(eval)) {
    require(dim >= 1 && dim <= kMaxDim, "Metric: dimension must be in [1,4]");
  }

  static Metric identity(int n) {
    return Metric(n, [n](const Point&) { return Mat::identity(n); });
  }

  static Metric diagonal(const Vec& d) {
    return Metric(d.dim(), [d](const Point&) { return Mat::diagonal(d); });
  }

  static Metric minkowski() { return diagonal(Vec{1.0, -1.0, -1.0, -1.0}); }

  int dim() const { return dim_; }

  Mat at(const Point& y) const {
    if (y.dim() != dim_) throw DimensionError("Metric::at: point dimension mismatch");
    return eval_(y).symmetrized();
  }

  bool positive_definite_at(const Point& y) const { return at(y).positive_definite(); }

private:
  int dim_;
  EvalFn eval_;
};

/// A length (or length-like integral) with its error estimate, or an
/// explicit divergence report. Divergence is a result, not an exception.
class ScaledLengthResult {
public:
  static ScaledLengthResult finite(double value, double abs_error, long evaluations) {
    ScaledLengthResult r;
    r.diverged_ = false;
    r.value_ = value;
    r.abs_error_ = abs_error;
    r.evaluations_ = evaluations;
    return r;
  }

  static ScaledLengthResult diverged(long evaluations) {
    ScaledLengthResult r;
    r.diverged_ = true;
    r.evaluations_ = evaluations;
    return r;
  }

  static ScaledLengthResult from(const IntegralResult& r, double scale = 1.0) {
    return r.diverged ? diverged(r.evaluations)
                      : finite(scale * r.value, scale * r.abs_error, r.evaluations);
  }

  bool is_diverged() const { return diverged_; }

  double value() const {
    if (diverged_) throw DomainError("ScaledLengthResult: divergent, no finite value");
    return value_;
  }

  double value_or(double fallback) const { return diverged_ ? fallback : value_; }
  double abs_error_estimate() const { return abs_error_; }
  long evaluations() const { return evaluations_; }

private:
  bool diverged_ = false;
  double value_ = 0.0;
  double abs_error_ = 0.0;
  long evaluations_ = 0;
};

/// ds^2(y) = g_{mu nu}(y) dy^mu dy^nu.
inline double line_element(const Metric& g, const Point& y, const Vec& dy) {
  if (dy.dim() != g.dim()) throw DimensionError("line_element: dy dimension mismatch");
  return g.at(y).quad(dy);
}

/// Scaled representation at reference x: exp(Theta(y)-Theta(x)) ds^2(y).
inline double line_element_scaled(const Metric& g, const ScalarField& f, const Point& y,
                                  const Point& x, const Vec& dy) {
  return std::exp(f.value(y) - f.value(x)) * line_element(g, y, dy);
}

/// Unscaled path length int_0^1 |dp/ds| ds with the Euclidean norm.
inline ScaledLengthResult path_length(const Path& p, const QuadratureOptions& opts = {}) {
  auto integrand = [&](double s) { return p.velocity(s).norm(); };
  return ScaledLengthResult::from(integrate_split(integrand, 0.0, 1.0, p.breakpoints(), opts));
}

/// Scaled path length e^{-Theta(ref)} int_0^1 e^{Theta(p(s))} |dp/ds| ds.
/// The integrand is handled in log space; divergence of the internal
/// integral past the threshold is reported as DIVERGED.
inline ScaledLengthResult path_length_scaled(const Path& p, const ScalarField& f,
                                             const Point& ref,
                                             const QuadratureOptions& opts = {}) {
  auto log_integrand = [&](double s) {
    double speed = p.velocity(s).norm();
    return f.value(p.at(s)) + std::log(speed);
  };
  IntegralResult r = integrate_exp_split(log_integrand, 0.0, 1.0, p.breakpoints(), opts);
  return ScaledLengthResult::from(r, std::exp(-f.value(ref)));
}

/// Moves the reference point of a scaled length from x to z.
inline double reference_change(double length_at_x, const ScalarField& f, const Point& x,
                               const Point& z) {
  return std::exp(f.value(x) - f.value(z)) * length_at_x;
}

/// Coordinate transport without scaling: values are preserved.
inline Vec coord_transport(const Vec& a, const Point& /*y*/, const Point& /*x*/) { return a; }

/// Coordinate transport with scaling: a -> r_{y,x} a componentwise.
inline Vec coord_transport(const Vec& a, const Point& y, const Point& x, const ScalarField& f) {
  return scale_factor_gradient(f, y, x) * a;
}

}  // namespace numscale
