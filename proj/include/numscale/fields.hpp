#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "numscale/core.hpp"
#include "numscale/path.hpp"
#include "numscale/quadrature.hpp"

namespace numscale {

namespace detail {
inline double fd_step(double coord) { return std::max(1e-6, 1e-6 * std::abs(coord)); }
}  // namespace detail

/// Scalar field Theta. Differences of Theta generate scaling factors; its
/// gradient is the vector field A. Immutable and pure, safe to share.
class ScalarField {
public:
  using EvalFn = std::function<double(const Point&)>;
  using GradFn = std::function<Vec(const Point&)>;

  explicit ScalarField(EvalFn eval) : eval_(std::move(eval)) {}
  ScalarField(EvalFn eval, GradFn gradient)
      : eval_(std::move(eval)), grad_(std::move(gradient)) {}

  double value(const Point& x) const { return eval_(x); }
  double operator()(const Point& x) const { return eval_(x); }

  bool has_analytic_gradient() const { return static_cast<bool>(grad_); }

  /// Analytic gradient when present, else central finite differences with a
  /// per-coordinate step max(1e-6, 1e-6|x_i|).
  Vec gradient(const Point& x) const {
    if (grad_) return grad_(x);
    Vec g(x.dim());
    for (int i = 0; i < x.dim(); ++i) {
      double h = detail::fd_step(x[i]);
      Point xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      g[i] = (eval_(xp) - eval_(xm)) / (2.0 * h);
    }
    return g;
  }

private:
  EvalFn eval_;
  GradFn grad_;
};

/// Vector field A (inverse length units). `is_gradient` records provenance
/// from a scalar potential, which makes scale factors path independent.
class VectorField {
public:
  using EvalFn = std::function<Vec(const Point&)>;

  VectorField(EvalFn eval, bool is_gradient)
      : eval_(std::move(eval)), is_gradient_(is_gradient) {}

  static VectorField gradient_of(ScalarField f) {
    return VectorField([f = std::move(f)](const Point& x) { return f.gradient(x); }, true);
  }

  Vec operator()(const Point& x) const { return eval_(x); }
  bool is_gradient() const { return is_gradient_; }

private:
  EvalFn eval_;
  bool is_gradient_;
};

// Radius below which a radial field refuses to evaluate; callers must handle
// divergence explicitly instead of receiving +-inf.
inline constexpr double kSingularRadius = 1e-12;

/// Field catalog: the named Theta families used throughout.
struct FieldCatalogEntry {
  enum class Kind { constant, radial, cosmological, linear, rotational };

  Kind kind = Kind::constant;
  double constant_value = 0.0;  // constant
  double K = 0.0;               // radial strength (length units)
  Point center;                 // radial center
  double alpha = 0.0;           // cosmological exponent
  double t_now = 0.0;           // present time, > 0
  double kappa = 0.0;           // linear slope
  Vec direction;                // linear direction (normalized on use)
  double omega = 1.0;           // rotational curl

  static FieldCatalogEntry constant(double c) {
    FieldCatalogEntry e;
    e.kind = Kind::constant;
    e.constant_value = c;
    return e;
  }
  static FieldCatalogEntry radial(double K, Point center) {
    FieldCatalogEntry e;
    e.kind = Kind::radial;
    e.K = K;
    e.center = std::move(center);
    return e;
  }
  static FieldCatalogEntry cosmological(double alpha, double t_now) {
    FieldCatalogEntry e;
    e.kind = Kind::cosmological;
    e.alpha = alpha;
    e.t_now = t_now;
    return e;
  }
  static FieldCatalogEntry linear(double kappa, Vec direction) {
    FieldCatalogEntry e;
    e.kind = Kind::linear;
    e.kappa = kappa;
    e.direction = std::move(direction);
    return e;
  }
  static FieldCatalogEntry rotational(double omega) {
    FieldCatalogEntry e;
    e.kind = Kind::rotational;
    e.omega = omega;
    return e;
  }
};

inline ScalarField constant_field(double c) {
  return ScalarField([c](const Point&) { return c; },
                     [](const Point& x) { return Vec::zero(x.dim()); });
}

/// Theta(y) = K/|y - center|. Singular at the center.
inline ScalarField radial_field(double K, const Point& center) {
  require(std::isfinite(K), "radial_field: K must be finite");
  require(center.finite(), "radial_field: center must be finite");
  auto guard = [center](const Point& y) {
    double s = distance(y, center);
    if (s < kSingularRadius) throw DomainError("radial field: evaluation at singular center");
    return s;
  };
  auto eval = [K, guard](const Point& y) { return K / guard(y); };
  auto grad = [K, center, guard](const Point& y) {
    double s = guard(y);
    return (-K / (s * s * s)) * (y - center);
  };
  return ScalarField(eval, grad);
}

/// Theta(t) = alpha * ln(t / t_now) on the 1-D time axis; Theta(t_now) = 0.
inline ScalarField cosmological_field(double alpha, double t_now) {
  require(std::isfinite(alpha), "cosmological_field: alpha must be finite");
  require(t_now > 0.0 && std::isfinite(t_now), "cosmological_field: t_now must be positive");
  auto eval = [alpha, t_now](const Point& p) {
    double t = p[0];
    if (t <= 0.0) throw DomainError("cosmological field: time must be positive");
    return alpha * std::log(t / t_now);
  };
  auto grad = [alpha](const Point& p) {
    double t = p[0];
    if (t <= 0.0) throw DomainError("cosmological field: time must be positive");
    Vec g = Vec::zero(p.dim());
    g[0] = alpha / t;
    return g;
  };
  return ScalarField(eval, grad);
}

/// Theta(y) = kappa * (y . dhat).
inline ScalarField linear_field(double kappa, const Vec& direction) {
  require(std::isfinite(kappa), "linear_field: kappa must be finite");
  Vec dhat = direction.normalized();
  auto eval = [kappa, dhat](const Point& y) { return kappa * y.dot(dhat); };
  auto grad = [kappa, dhat](const Point&) { return kappa * dhat; };
  return ScalarField(eval, grad);
}

/// Planar A = omega * (-x2/2, x1/2); curl A = omega. Not a gradient: no
/// scalar potential exists, so this enters the catalog as a VectorField only.
inline VectorField rotational_vector_field(double omega = 1.0) {
  require(std::isfinite(omega), "rotational_vector_field: omega must be finite");
  return VectorField(
      [omega](const Point& x) {
        if (x.dim() != 2) throw DimensionError("rotational field: 2-D only");
        return Vec{-omega * x[1] / 2.0, omega * x[0] / 2.0};
      },
      false);
}

inline ScalarField make_field(const FieldCatalogEntry& e) {
  using Kind = FieldCatalogEntry::Kind;
  switch (e.kind) {
    case Kind::constant:
      return constant_field(e.constant_value);
    case Kind::radial:
      return radial_field(e.K, e.center);
    case Kind::cosmological:
      return cosmological_field(e.alpha, e.t_now);
    case Kind::linear:
      return linear_field(e.kappa, e.direction);
    case Kind::rotational:
      throw InvalidParameter("make_field: rotational field has no scalar potential");
  }
  throw InvalidParameter("make_field: unknown kind");
}

inline VectorField make_vector_field(const FieldCatalogEntry& e) {
  if (e.kind == FieldCatalogEntry::Kind::rotational) return rotational_vector_field(e.omega);
  return VectorField::gradient_of(make_field(e));
}

inline Vec grad_theta(const ScalarField& f, const Point& x) { return f.gradient(x); }

/// r_{y,x} for a neighbor point y = x + direction*dx: exp(A(x).direction dx).
inline double scale_factor_neighbor(const VectorField& A, const Point& x, const Vec& direction,
                                    double dx) {
  return std::exp(A(x).dot(direction) * dx);
}

/// r^p_{y,x} = exp(int_p A . dp) along the path p from x to y.
inline double scale_factor_path(const VectorField& A, const Path& p,
                                const QuadratureOptions& opts = {}) {
  auto integrand = [&](double s) { return A(p.at(s)).dot(p.velocity(s)); };
  IntegralResult r = integrate_split(integrand, 0.0, 1.0, p.breakpoints(), opts);
  return std::exp(r.value);
}

/// Path-independent r_{y,x} = exp(Theta(y) - Theta(x)) for gradient fields.
inline double scale_factor_gradient(const ScalarField& f, const Point& y, const Point& x) {
  return std::exp(f.value(y) - f.value(x));
}

}  // namespace numscale
