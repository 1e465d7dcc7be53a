#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace numscale {

// Error hierarchy. Divergent integrals are NOT errors; they are reported
// through ScaledLengthResult. Exceptions cover domain violations, bad
// arguments, and numerical failure.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class InvalidParameter : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class QuadratureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxDim = 4;

/// Small dense vector with inline storage, dimension 1..4.
/// Used both for points of the manifold and for displacements/gradients.
class Vec {
public:
  Vec() = default;

  explicit Vec(int n) : n_(n) {
    if (n < 1 || n > kMaxDim) throw DimensionError("Vec: dimension must be in [1,4]");
  }

  Vec(std::initializer_list<double> xs) : n_(static_cast<int>(xs.size())) {
    if (n_ < 1 || n_ > kMaxDim) throw DimensionError("Vec: dimension must be in [1,4]");
    int i = 0;
    for (double x : xs) c_[i++] = x;
  }

  static Vec zero(int n) { return Vec(n); }

  /// Unit vector along axis `axis` in n dimensions.
  static Vec axis(int n, int axis_index) {
    Vec v(n);
    if (axis_index < 0 || axis_index >= n) throw DimensionError("Vec::axis: axis out of range");
    v[axis_index] = 1.0;
    return v;
  }

  int dim() const { return n_; }

  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

  bool finite() const {
    for (int i = 0; i < n_; ++i)
      if (!std::isfinite(c_[static_cast<std::size_t>(i)])) return false;
    return true;
  }

  Vec& operator+=(const Vec& o) {
    check_same_dim(o);
    for (int i = 0; i < n_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    check_same_dim(o);
    for (int i = 0; i < n_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < n_; ++i) c_[i] *= s;
    return *this;
  }
  Vec& operator/=(double s) {
    for (int i = 0; i < n_; ++i) c_[i] /= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator/(Vec a, double s) { return a /= s; }
  friend Vec operator-(Vec a) { return a *= -1.0; }

  friend bool operator==(const Vec& a, const Vec& b) {
    if (a.n_ != b.n_) return false;
    for (int i = 0; i < a.n_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

  double dot(const Vec& o) const {
    check_same_dim(o);
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += c_[i] * o.c_[i];
    return s;
  }

  double norm() const { return std::sqrt(dot(*this)); }

  Vec normalized() const {
    double n = norm();
    if (n == 0.0) throw DomainError("Vec::normalized: zero vector");
    return *this / n;
  }

  /// Componentwise (Hadamard) product.
  Vec hadamard(const Vec& o) const {
    check_same_dim(o);
    Vec r(n_);
    for (int i = 0; i < n_; ++i) r[i] = c_[i] * o.c_[i];
    return r;
  }

private:
  void check_same_dim(const Vec& o) const {
    if (n_ != o.n_) throw DimensionError("Vec: dimension mismatch");
  }

  std::array<double, kMaxDim> c_{};
  int n_ = 0;
};

using Point = Vec;

inline double distance(const Point& a, const Point& b) { return (a - b).norm(); }

/// Small dense square matrix with inline storage, dimension 1..4.
class Mat {
public:
  Mat() = default;

  explicit Mat(int n) : n_(n) {
    if (n < 1 || n > kMaxDim) throw DimensionError("Mat: dimension must be in [1,4]");
  }

  static Mat identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Mat diagonal(const Vec& d) {
    Mat m(d.dim());
    for (int i = 0; i < d.dim(); ++i) m(i, i) = d[i];
    return m;
  }

  int dim() const { return n_; }

  double& operator()(int i, int j) { return c_[static_cast<std::size_t>(i * kMaxDim + j)]; }
  double operator()(int i, int j) const { return c_[static_cast<std::size_t>(i * kMaxDim + j)]; }

  bool symmetric(double tol = 0.0) const {
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
  }

  /// Symmetric part (M + M^T)/2.
  Mat symmetrized() const {
    Mat m(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
    return m;
  }

  /// Cholesky-style positive definiteness test for symmetric input.
  bool positive_definite() const {
    Mat l(n_);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j <= i; ++j) {
        double s = (*this)(i, j);
        for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
        if (i == j) {
          if (s <= 0.0 || !std::isfinite(s)) return false;
          l(i, i) = std::sqrt(s);
        } else {
          l(i, j) = s / l(j, j);
        }
      }
    }
    return true;
  }

  /// Quadratic form v^T M v.
  double quad(const Vec& v) const {
    if (v.dim() != n_) throw DimensionError("Mat::quad: dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) s += (*this)(i, j) * v[i] * v[j];
    return s;
  }

private:
  std::array<double, kMaxDim * kMaxDim> c_{};
  int n_ = 0;
};

inline void require(bool cond, const char* msg) {
  if (!cond) throw InvalidParameter(msg);
}

}  // namespace numscale
