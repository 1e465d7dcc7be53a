#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "numscale/core.hpp"

namespace numscale {

/// Parameterized curve p : [0,1] -> M with endpoints p(0), p(1).
/// Velocity dp/ds is analytic when supplied, otherwise finite-difference.
/// `breakpoints` lists the isolated interior parameters where the velocity
/// jumps (polyline corners); integrators split there.
class Path {
public:
  using MapFn = std::function<Point(double)>;
  using VelFn = std::function<Vec(double)>;

  explicit Path(MapFn map, std::vector<double> breakpoints = {})
      : map_(std::move(map)), breaks_(std::move(breakpoints)) {}

  Path(MapFn map, VelFn velocity, std::vector<double> breakpoints = {})
      : map_(std::move(map)), vel_(std::move(velocity)), breaks_(std::move(breakpoints)) {}

  Point at(double s) const { return map_(s); }

  Vec velocity(double s) const {
    if (vel_) return vel_(s);
    const double h = 1e-6;
    double lo = std::max(0.0, s - h);
    double hi = std::min(1.0, s + h);
    return (map_(hi) - map_(lo)) / (hi - lo);
  }

  Point start() const { return map_(0.0); }
  Point end() const { return map_(1.0); }

  const std::vector<double>& breakpoints() const { return breaks_; }

  bool has_analytic_velocity() const { return static_cast<bool>(vel_); }

  static Path segment(const Point& x, const Point& y) {
    Vec d = y - x;
    return Path([x, d](double s) { return x + s * d; }, [d](double) { return d; });
  }

  /// Piecewise-linear path through `nodes`, uniform parameter per segment.
  static Path polyline(std::vector<Point> nodes) {
    require(nodes.size() >= 2, "Path::polyline: need at least two nodes");
    const int m = static_cast<int>(nodes.size()) - 1;
    std::vector<double> breaks;
    for (int k = 1; k < m; ++k) breaks.push_back(static_cast<double>(k) / m);
    auto shared = std::make_shared<std::vector<Point>>(std::move(nodes));
    auto map = [shared, m](double s) {
      double t = s * m;
      int k = std::min(static_cast<int>(t), m - 1);
      double u = t - k;
      return (*shared)[k] + u * ((*shared)[k + 1] - (*shared)[k]);
    };
    auto vel = [shared, m](double s) {
      double t = s * m;
      int k = std::min(static_cast<int>(t), m - 1);
      return static_cast<double>(m) * ((*shared)[k + 1] - (*shared)[k]);
    };
    return Path(map, vel, breaks);
  }

  /// Planar circular arc from angle a0 to a1 about `center`.
  static Path circle_arc(const Point& center, double radius, double a0, double a1) {
    require(center.dim() == 2, "Path::circle_arc: 2-D only");
    require(radius > 0.0, "Path::circle_arc: radius must be positive");
    double da = a1 - a0;
    auto map = [center, radius, a0, da](double s) {
      double a = a0 + s * da;
      return Point{center[0] + radius * std::cos(a), center[1] + radius * std::sin(a)};
    };
    auto vel = [radius, a0, da](double s) {
      double a = a0 + s * da;
      return Vec{-radius * da * std::sin(a), radius * da * std::cos(a)};
    };
    return Path(map, vel);
  }

private:
  MapFn map_;
  VelFn vel_;
  std::vector<double> breaks_;
};

}  // namespace numscale
