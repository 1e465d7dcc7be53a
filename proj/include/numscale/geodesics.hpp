#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "numscale/core.hpp"
#include "numscale/fields.hpp"

namespace numscale {

struct OptimizerOptions {
  int nodes = 64;                      // segments N; the path has N+1 nodes
  int max_iterations = 10000;
  double gradient_tolerance = 1e-9;    // max per-node gradient norm
  double backtrack_shrink = 0.5;
  double sufficient_decrease = 1e-4;   // Armijo constant
  // Optional keep-out ball around a field singularity; steps placing an
  // interior node inside are rejected by shrinking the step.
  std::optional<Point> singular_center;
  double singular_radius = 0.0;
};

/// Piecewise-linear curve with N+1 nodes at uniform parameters k/N.
/// Endpoints are fixed; optimization moves interior nodes only.
class DiscretePath {
public:
  explicit DiscretePath(std::vector<Point> nodes) : nodes_(std::move(nodes)) {
    require(nodes_.size() >= 2, "DiscretePath: need at least two nodes");
    for (std::size_t k = 0; k + 1 < nodes_.size(); ++k)
      if (distance(nodes_[k], nodes_[k + 1]) == 0.0)
        throw InvalidParameter("DiscretePath: consecutive nodes coincide");
  }

  static DiscretePath chord(const Point& x, const Point& y, int segments) {
    require(segments >= 1, "DiscretePath::chord: need at least one segment");
    require(distance(x, y) > 0.0, "DiscretePath::chord: endpoints coincide");
    std::vector<Point> nodes;
    nodes.reserve(static_cast<std::size_t>(segments) + 1);
    nodes.push_back(x);
    for (int k = 1; k < segments; ++k)
      nodes.push_back(x + (static_cast<double>(k) / segments) * (y - x));
    nodes.push_back(y);
    return DiscretePath(std::move(nodes));
  }

  int segments() const { return static_cast<int>(nodes_.size()) - 1; }
  const std::vector<Point>& nodes() const { return nodes_; }
  const Point& node(int k) const { return nodes_[static_cast<std::size_t>(k)]; }

private:
  std::vector<Point> nodes_;
};

namespace detail {

inline double discrete_length_impl(const std::vector<Point>& nodes, const ScalarField& f,
                                   double theta_ref) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    Point mid = 0.5 * (nodes[k] + nodes[k + 1]);
    total += std::exp(f.value(mid) - theta_ref) * distance(nodes[k], nodes[k + 1]);
  }
  return total;
}

// Analytic gradient of the midpoint-rule scaled length with respect to the
// interior nodes. Endpoint entries stay zero.
inline std::vector<Vec> discrete_length_gradient_impl(const std::vector<Point>& nodes,
                                                      const ScalarField& f, double theta_ref) {
  const std::size_t n = nodes.size() - 1;
  const int dim = nodes.front().dim();
  std::vector<double> w(n), len(n);
  std::vector<Vec> dir(n), gmid(n);
  for (std::size_t k = 0; k < n; ++k) {
    Vec d = nodes[k + 1] - nodes[k];
    len[k] = d.norm();
    // Subgradient at a collapsed segment: |d| is not differentiable at 0,
    // and 0 is a valid subgradient there.
    dir[k] = len[k] > 0.0 ? d / len[k] : Vec::zero(dim);
    Point mid = 0.5 * (nodes[k] + nodes[k + 1]);
    w[k] = std::exp(f.value(mid) - theta_ref);
    gmid[k] = f.gradient(mid);
  }
  std::vector<Vec> grad(nodes.size(), Vec::zero(dim));
  for (std::size_t j = 1; j < n; ++j) {
    Vec g = w[j - 1] * dir[j - 1] - w[j] * dir[j];
    g += 0.5 * w[j - 1] * len[j - 1] * gmid[j - 1];
    g += 0.5 * w[j] * len[j] * gmid[j];
    grad[j] = g;
  }
  return grad;
}

}  // namespace detail

/// Midpoint-rule approximation of the scaled length of a discrete path,
/// referenced to `ref`.
inline double discrete_scaled_length(const DiscretePath& dp, const ScalarField& f,
                                     const Point& ref) {
  return detail::discrete_length_impl(dp.nodes(), f, f.value(ref));
}

/// Gradient of discrete_scaled_length with respect to node positions.
/// Exposed for diagnostics; endpoint entries are zero.
inline std::vector<Vec> discrete_length_gradient(const DiscretePath& dp, const ScalarField& f,
                                                 const Point& ref) {
  return detail::discrete_length_gradient_impl(dp.nodes(), f, f.value(ref));
}

struct MinimizeResult {
  DiscretePath path;
  std::vector<double> objective_history;  // accepted objective values, index 0 = initial
  int iterations = 0;
  double gradient_norm = 0.0;  // max per-node gradient norm at exit
};

/// Minimizes the discrete scaled length between fixed endpoints by gradient
/// descent with Barzilai-Borwein step seeding and Armijo backtracking.
/// The reference point is the start point x.
inline MinimizeResult minimize_scaled_length_traced(const Point& x, const Point& y,
                                                    const ScalarField& f,
                                                    const OptimizerOptions& opts = {}) {
  require(opts.nodes >= 4, "minimize_scaled_length: need at least 4 segments");
  require(distance(x, y) > 0.0, "minimize_scaled_length: endpoints coincide");
  const double theta_ref = f.value(x);
  const std::size_t count = static_cast<std::size_t>(opts.nodes) + 1;

  std::vector<Point> nodes = DiscretePath::chord(x, y, opts.nodes).nodes();
  double obj = detail::discrete_length_impl(nodes, f, theta_ref);
  std::vector<Vec> grad = detail::discrete_length_gradient_impl(nodes, f, theta_ref);

  auto max_node_norm = [](const std::vector<Vec>& g) {
    double m = 0.0;
    for (const Vec& v : g) m = std::max(m, v.norm());
    return m;
  };
  auto sum_sq = [](const std::vector<Vec>& g) {
    double s = 0.0;
    for (const Vec& v : g) s += v.dot(v);
    return s;
  };
  auto inside_keep_out = [&](const std::vector<Point>& cand) {
    if (!opts.singular_center) return false;
    for (std::size_t j = 1; j + 1 < cand.size(); ++j)
      if (distance(cand[j], *opts.singular_center) < opts.singular_radius) return true;
    return false;
  };
  // Steps that collapse a segment leave the smooth region of the
  // functional (|d| is not differentiable at 0) and would violate the
  // distinct-consecutive-nodes invariant; the line search rejects them.
  const double min_segment = 1e-8 * distance(x, y) / opts.nodes;
  auto collapses_segment = [&](const std::vector<Point>& cand) {
    for (std::size_t j = 0; j + 1 < cand.size(); ++j)
      if (distance(cand[j], cand[j + 1]) < min_segment) return true;
    return false;
  };

  MinimizeResult result{DiscretePath(nodes), {obj}, 0, max_node_norm(grad)};

  // Descent directions come from an L-BFGS approximation of the inverse
  // Hessian (memory 10); the method stays first-order and monotone via the
  // Armijo backtracking below. Plain steepest descent stalls on the nearly
  // flat node-sliding modes of the discretized functional.
  constexpr int kMemory = 10;
  std::vector<std::vector<Vec>> hist_s, hist_y;
  std::vector<double> hist_rho;

  auto dot_all = [count](const std::vector<Vec>& a, const std::vector<Vec>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < count; ++j) s += a[j].dot(b[j]);
    return s;
  };

  const double chord_len = distance(x, y);

  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    double gmax = max_node_norm(grad);
    if (gmax <= opts.gradient_tolerance) {
      result.path = DiscretePath(nodes);
      result.iterations = iter - 1;
      result.gradient_norm = gmax;
      return result;
    }

    // Two-loop recursion for d = -H g.
    std::vector<Vec> dir = grad;
    const std::size_t m = hist_s.size();
    std::vector<double> a_coef(m);
    for (std::size_t k = m; k-- > 0;) {
      a_coef[k] = hist_rho[k] * dot_all(hist_s[k], dir);
      for (std::size_t j = 0; j < count; ++j) dir[j] -= a_coef[k] * hist_y[k][j];
    }
    if (m > 0) {
      double gamma = 1.0 / (hist_rho[m - 1] * dot_all(hist_y[m - 1], hist_y[m - 1]));
      for (std::size_t j = 0; j < count; ++j) dir[j] *= gamma;
    }
    for (std::size_t k = 0; k < m; ++k) {
      double b = hist_rho[k] * dot_all(hist_y[k], dir);
      for (std::size_t j = 0; j < count; ++j) dir[j] += (a_coef[k] - b) * hist_s[k][j];
    }
    for (std::size_t j = 0; j < count; ++j) dir[j] = -dir[j];

    double slope = dot_all(grad, dir);
    if (!(slope < 0.0)) {  // not a descent direction: restart from -g
      hist_s.clear();
      hist_y.clear();
      hist_rho.clear();
      for (std::size_t j = 0; j < count; ++j) dir[j] = -grad[j];
      slope = -sum_sq(grad);
    }

    std::vector<Point> cand(count);
    double cand_obj = 0.0;
    bool accepted = false;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      if (attempt == 1) {
        // Line search failed along the quasi-Newton direction; drop the
        // memory and retry along -g before declaring a stall.
        if (hist_s.empty()) break;
        hist_s.clear();
        hist_y.clear();
        hist_rho.clear();
        for (std::size_t j = 0; j < count; ++j) dir[j] = -grad[j];
        slope = -sum_sq(grad);
      }
      double alpha = hist_s.empty() && attempt == 0 && iter == 1
                         ? std::min(1.0, 0.01 * chord_len / gmax)
                         : 1.0;
      for (int bt = 0; bt < 90; ++bt) {
        for (std::size_t j = 0; j < count; ++j) cand[j] = nodes[j] + alpha * dir[j];
        bool feasible = !inside_keep_out(cand) && !collapses_segment(cand);
        if (feasible) {
          try {
            cand_obj = detail::discrete_length_impl(cand, f, theta_ref);
            feasible = std::isfinite(cand_obj);
          } catch (const DomainError&) {
            feasible = false;
          }
        }
        if (feasible && cand_obj <= obj + opts.sufficient_decrease * alpha * slope) {
          accepted = true;
          break;
        }
        alpha *= opts.backtrack_shrink;
      }
    }
    if (!accepted)
      throw ConvergenceError("minimize_scaled_length: line search stalled before tolerance");

    std::vector<Vec> new_grad = detail::discrete_length_gradient_impl(cand, f, theta_ref);
    std::vector<Vec> step(count), dgrad(count);
    for (std::size_t j = 0; j < count; ++j) {
      step[j] = cand[j] - nodes[j];
      dgrad[j] = new_grad[j] - grad[j];
    }
    double sy = dot_all(step, dgrad);
    if (sy > 1e-10 * std::sqrt(dot_all(step, step)) * std::sqrt(dot_all(dgrad, dgrad))) {
      hist_s.push_back(std::move(step));
      hist_y.push_back(std::move(dgrad));
      hist_rho.push_back(1.0 / sy);
      if (static_cast<int>(hist_s.size()) > kMemory) {
        hist_s.erase(hist_s.begin());
        hist_y.erase(hist_y.begin());
        hist_rho.erase(hist_rho.begin());
      }
    }

    nodes = std::move(cand);
    obj = cand_obj;
    grad = std::move(new_grad);
    result.objective_history.push_back(obj);
    result.iterations = iter;
  }

  double gmax = max_node_norm(grad);
  if (gmax <= opts.gradient_tolerance) {
    result.path = DiscretePath(nodes);
    result.gradient_norm = gmax;
    return result;
  }
  throw ConvergenceError("minimize_scaled_length: max iterations reached");
}

inline DiscretePath minimize_scaled_length(const Point& x, const Point& y, const ScalarField& f,
                                           const OptimizerOptions& opts = {}) {
  return minimize_scaled_length_traced(x, y, f, opts).path;
}

/// Discretized Euler-Lagrange residual of the scaled length functional at
/// each interior node, central differences for the d/ds terms:
///   grad Theta |p'| - d/ds(Theta(p)) p'hat - d/ds(p'hat).
/// Zero (to discretization error) at a geodesic.
inline std::vector<Vec> el_residual(const DiscretePath& dp, const ScalarField& f) {
  const auto& nodes = dp.nodes();
  const int n = dp.segments();
  require(n >= 2, "el_residual: need at least two segments");
  const double h = 1.0 / n;
  std::vector<Vec> unit(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Vec d = nodes[k + 1] - nodes[k];
    unit[k] = d.normalized();
  }
  std::vector<Vec> residuals;
  residuals.reserve(static_cast<std::size_t>(n) - 1);
  for (int j = 1; j < n; ++j) {
    Vec vel = (nodes[j + 1] - nodes[j - 1]) / (2.0 * h);
    double speed = vel.norm();
    Vec vhat = vel / speed;
    double dtheta_ds = (f.value(nodes[j + 1]) - f.value(nodes[j - 1])) / (2.0 * h);
    Vec dds_term = (unit[j] - unit[j - 1]) / h;
    Vec res = f.gradient(nodes[j]) * speed - dtheta_ds * vhat - dds_term;
    residuals.push_back(res);
  }
  return residuals;
}

/// Scaled distance between x and y: the scaled length of the minimizing
/// discrete path, referenced to x.
inline double distance_scaled(const Point& x, const Point& y, const ScalarField& f,
                              const OptimizerOptions& opts = {}) {
  DiscretePath p = minimize_scaled_length(x, y, f, opts);
  return discrete_scaled_length(p, f, x);
}

}  // namespace numscale
