#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "numscale/core.hpp"
#include "numscale/fields.hpp"

namespace numscale {

namespace detail {
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }
}  // namespace detail

/// A number structure with its operations reinterpreted by a scale factor r:
/// addition is unchanged, multiplication becomes a*b/r, division r*a/b, and
/// r plays the role of the multiplicative identity. Values stay ordinary
/// floating point; only the operation table changes. The same table serves
/// real and complex scalars.
template <class T = double>
class ScaledStructure {
public:
  explicit ScaledStructure(double scale) : scale_(scale) {
    require(std::isfinite(scale) && scale > 0.0, "ScaledStructure: scale must be positive");
  }

  double scale() const { return scale_; }

  T zero() const { return T(0); }
  /// The scaled one: the element corresponding to the value 1.
  T one() const { return T(scale_); }

  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b / scale_; }

  T div(const T& a, const T& b) const {
    if (b == T(0)) throw DomainError("ScaledStructure::div: division by zero");
    return scale_ * a / b;
  }

  /// Representation in this structure of the value `a` at the source point.
  T correspond(const T& a) const { return scale_ * a; }

  /// Checks that the relation c/g transfers invariantly: the scaled quotient
  /// of the corresponded values equals the corresponded quotient.
  bool equation_invariant(const T& c, const T& g, double rel_tol = 1e-12) const {
    if (g == T(0)) throw DomainError("equation_invariant: division by zero");
    T lhs = div(correspond(c), correspond(g));
    T rhs = correspond(c / g);
    double denom = std::max(detail::magnitude(rhs), detail::magnitude(lhs));
    if (denom == 0.0) return true;
    return detail::magnitude(lhs - rhs) <= rel_tol * denom;
  }

private:
  double scale_;
};

using ScaledReal = ScaledStructure<double>;
using ScaledComplex = ScaledStructure<std::complex<double>>;

template <class T>
bool check_equation_invariance(const T& c, const T& g, const ScaledStructure<T>& s,
                               double rel_tol = 1e-12) {
  return s.equation_invariant(c, g, rel_tol);
}

inline double scaled_add(double a, double b, const ScaledReal& s) { return s.add(a, b); }
inline double scaled_mul(double a, double b, const ScaledReal& s) { return s.mul(a, b); }
inline double scaled_div(double a, double b, const ScaledReal& s) { return s.div(a, b); }
inline double correspond(double a, const ScaledReal& s) { return s.correspond(a); }

/// Finite-dimensional inner-product space under scaling: scalar action c/r
/// and inner product r<u,v>. Complex instantiation conjugates the first slot.
template <class T = double>
class ScaledVectorSpace {
public:
  ScaledVectorSpace(int dim, double scale) : dim_(dim), scale_(scale) {
    require(dim >= 1, "ScaledVectorSpace: dimension must be positive");
    require(std::isfinite(scale) && scale > 0.0, "ScaledVectorSpace: scale must be positive");
  }

  int dim() const { return dim_; }
  double scale() const { return scale_; }

  std::vector<T> scale_vector(const T& c, const std::vector<T>& v) const {
    check(v);
    std::vector<T> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i] / scale_;
    return r;
  }

  T inner(const std::vector<T>& u, const std::vector<T>& v) const {
    check(u);
    check(v);
    T s{};
    for (std::size_t i = 0; i < u.size(); ++i) {
      if constexpr (std::is_same_v<T, std::complex<double>>)
        s += std::conj(u[i]) * v[i];
      else
        s += u[i] * v[i];
    }
    return scale_ * s;
  }

private:
  void check(const std::vector<T>& v) const {
    if (static_cast<int>(v.size()) != dim_)
      throw DimensionError("ScaledVectorSpace: dimension mismatch");
  }

  int dim_;
  double scale_;
};

template <class T>
std::vector<T> scaled_vector_scale(const T& c, const std::vector<T>& v,
                                   const ScaledVectorSpace<T>& vs) {
  return vs.scale_vector(c, v);
}

template <class T>
T scaled_inner(const std::vector<T>& u, const std::vector<T>& v, const ScaledVectorSpace<T>& vs) {
  return vs.inner(u, v);
}

/// The parallel transform F_{y,x} factored through scaling, F = Z W: a value
/// a at the source corresponds to factor * a at the target. factor = 1 is
/// the pure value-preserving map.
class TransportMap {
public:
  TransportMap(Point source, Point target, double factor)
      : source_(std::move(source)), target_(std::move(target)), factor_(factor) {
    require(std::isfinite(factor) && factor > 0.0, "TransportMap: factor must be positive");
  }

  /// Transport from x to y generated by a gradient field.
  static TransportMap from_field(const ScalarField& f, const Point& y, const Point& x) {
    return TransportMap(x, y, scale_factor_gradient(f, y, x));
  }

  const Point& source() const { return source_; }
  const Point& target() const { return target_; }
  double factor() const { return factor_; }

  double transport(double a) const { return factor_ * a; }

  /// Composition target<-mid with mid<-source; factors multiply.
  TransportMap compose(const TransportMap& inner) const {
    return TransportMap(inner.source_, target_, factor_ * inner.factor_);
  }

private:
  Point source_, target_;
  double factor_;
};

}  // namespace numscale
