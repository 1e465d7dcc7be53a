#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "numscale/core.hpp"
#include "numscale/fields.hpp"
#include "numscale/path.hpp"
#include "numscale/quadrature.hpp"

namespace numscale {

/// Uniform 1-D sample grid of a complex wave function.
struct Grid1D {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<std::complex<double>> values;

  Grid1D() = default;
  Grid1D(double x0_, double dx_, std::vector<std::complex<double>> values_)
      : x0(x0_), dx(dx_), values(std::move(values_)) {
    require(dx > 0.0 && std::isfinite(dx), "Grid1D: dx must be positive");
  }

  int size() const { return static_cast<int>(values.size()); }
  double x(int k) const { return x0 + k * dx; }
  Point point(int k) const { return Point{x(k)}; }
};

/// Lagrangian L = m/2 |v|^2 - V(q). Kinetic-only when V is absent.
struct LagrangianSpec {
  double mass = 1.0;
  std::function<double(const Point&)> potential;  // empty = free particle

  static LagrangianSpec free_particle(double m) {
    require(m > 0.0 && std::isfinite(m), "LagrangianSpec: mass must be positive");
    LagrangianSpec l;
    l.mass = m;
    return l;
  }

  static LagrangianSpec with_potential(double m, std::function<double(const Point&)> V) {
    LagrangianSpec l = free_particle(m);
    l.potential = std::move(V);
    return l;
  }

  double operator()(const Point& q, const Vec& v) const {
    double val = 0.5 * mass * v.dot(v);
    if (potential) val -= potential(q);
    return val;
  }
};

/// Canonical-momentum kernel (d/dx + A(x)) psi on the grid: central
/// differences inside, one-sided at the boundaries (exact for constants).
/// The physical momentum operator is (hbar/i) times this, with hbar = 1.
inline Grid1D scaled_derivative(const Grid1D& g, const VectorField& A) {
  const int n = g.size();
  if (n < 3) throw InvalidParameter("scaled_derivative: grid needs at least 3 points");
  Grid1D out = g;
  for (int k = 0; k < n; ++k) {
    std::complex<double> d;
    if (k == 0)
      d = (g.values[1] - g.values[0]) / g.dx;
    else if (k == n - 1)
      d = (g.values[n - 1] - g.values[n - 2]) / g.dx;
    else
      d = (g.values[k + 1] - g.values[k - 1]) / (2.0 * g.dx);
    double a = A(g.point(k))[0];
    out.values[k] = d + a * g.values[k];
  }
  return out;
}

/// Covariant time derivative of a path, the operator [d/dt + A(gamma)]
/// applied to the position itself: gamma' + A(gamma) (.) gamma, with (.)
/// the componentwise product. The parameter t runs over [0,1].
inline Vec covariant_time_derivative(const Path& gamma, const VectorField& A, double t) {
  if (t < 0.0 || t > 1.0) throw DomainError("covariant_time_derivative: t out of [0,1]");
  Point pos = gamma.at(t);
  return gamma.velocity(t) + A(pos).hadamard(pos);
}

/// Scaled action int_{t_i}^{t_f} e^{Theta(gamma(t)) - Theta(ref)}
/// L(gamma, D_t gamma) dt. The path parameter [0,1] is mapped affinely onto
/// [t_i, t_f], so velocities are rescaled by 1/(t_f - t_i).
inline double scaled_action(const Path& gamma, const LagrangianSpec& lagrangian,
                            const ScalarField& f, const Point& ref, double t_i, double t_f,
                            const QuadratureOptions& opts = {}) {
  require(t_i < t_f, "scaled_action: need t_i < t_f");
  const double duration = t_f - t_i;
  const double theta_ref = f.value(ref);
  // A enters the covariant velocity; derived from Theta so the two stay
  // consistent.
  VectorField A = VectorField::gradient_of(f);
  auto integrand = [&](double t) {
    double s = (t - t_i) / duration;
    Point q = gamma.at(s);
    Vec v = gamma.velocity(s) / duration + A(q).hadamard(q);
    return std::exp(f.value(q) - theta_ref) * lagrangian(q, v);
  };
  IntegralResult r = integrate_split(
      integrand, t_i, t_f,
      [&] {
        std::vector<double> knots;
        for (double b : gamma.breakpoints()) knots.push_back(t_i + b * duration);
        return knots;
      }(),
      opts);
  if (r.diverged) throw QuadratureError("scaled_action: integral exceeded divergence threshold");
  return r.value;
}

/// Multiplies each sample by exp(Theta(z_k) - Theta(ref)). No
/// renormalization is applied.
inline Grid1D wavepacket_rescale(const Grid1D& g, const ScalarField& f, const Point& ref) {
  const double theta_ref = f.value(ref);
  Grid1D out = g;
  for (int k = 0; k < g.size(); ++k)
    out.values[k] = g.values[k] * std::exp(f.value(g.point(k)) - theta_ref);
  return out;
}

}  // namespace numscale
