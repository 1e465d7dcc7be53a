#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "numscale/core.hpp"

namespace numscale {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 60;  // bisection levels per panel chain
  double divergence_threshold = 1e12;
};

struct IntegralResult {
  double value = 0.0;
  double abs_error = 0.0;
  long evaluations = 0;
  bool diverged = false;
};

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1,1]. Kronrod nodes/weights plus the embedded
// 7-point Gauss weights (Gauss nodes are the odd-index Kronrod nodes).
inline constexpr int kGkPoints = 15;

inline constexpr double kGkNodes[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897,
    0.8648644233597690727897128, 0.7415311855993944398638648,
    0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0};

inline constexpr double kGkWeights[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};

inline constexpr double kGaussWeights[4] = {
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020};

// Abscissae of one panel, center +/- half*node.
inline void panel_abscissae(double center, double half, double (&x)[kGkPoints]) {
  x[0] = center;
  for (int i = 0; i < 7; ++i) {
    double off = half * kGkNodes[i];
    x[1 + 2 * i] = center - off;
    x[2 + 2 * i] = center + off;
  }
}

inline void panel_rule(const double (&y)[kGkPoints], double half, double& k15, double& g7) {
  double sk = kGkWeights[7] * y[0];
  double sg = kGaussWeights[3] * y[0];
  for (int i = 0; i < 7; ++i) {
    double pair = y[1 + 2 * i] + y[2 + 2 * i];
    sk += kGkWeights[i] * pair;
    if (i % 2 == 1) sg += kGaussWeights[i / 2] * pair;
  }
  k15 = sk * half;
  g7 = sg * half;
}

// log(sum w_i * exp(l_i)) relative to a shift, for positive-weight rules.
inline double log_rule(const double (&l)[kGkPoints], const double* wk, const double* wg,
                       double half, double& log_k15, double& log_g7) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : l) m = std::max(m, v);
  if (!std::isfinite(m)) {
    log_k15 = log_g7 = m;  // all -inf (zero integrand) or +inf blow-up
    return m;
  }
  double sk = wk[7] * std::exp(l[0] - m);
  double sg = wg[3] * std::exp(l[0] - m);
  for (int i = 0; i < 7; ++i) {
    double pair = std::exp(l[1 + 2 * i] - m) + std::exp(l[2 + 2 * i] - m);
    sk += wk[i] * pair;
    if (i % 2 == 1) sg += wg[i / 2] * pair;
  }
  log_k15 = m + std::log(sk * half);
  log_g7 = m + std::log(sg * half);
  return m;
}

struct Panel {
  double a, b;
  int depth;
};

inline constexpr long kMaxPanels = 1L << 20;

}  // namespace detail

/// Adaptive Gauss-Kronrod 7-15 integration of f over [a, b].
/// Throws QuadratureError on non-finite integrand values or if the
/// requested tolerance cannot be met. Reports `diverged` when the
/// accumulated integral exceeds opts.divergence_threshold in magnitude.
inline IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                                const QuadratureOptions& opts = {}) {
  IntegralResult res;
  if (a == b) return res;
  const double span = std::abs(b - a);
  std::vector<detail::Panel> stack{{a, b, 0}};
  long panels = 0;
  while (!stack.empty()) {
    detail::Panel p = stack.back();
    stack.pop_back();
    if (++panels > detail::kMaxPanels) throw QuadratureError("integrate: panel budget exhausted");
    const double center = 0.5 * (p.a + p.b);
    const double half = 0.5 * (p.b - p.a);
    double x[detail::kGkPoints], y[detail::kGkPoints];
    detail::panel_abscissae(center, half, x);
    for (int i = 0; i < detail::kGkPoints; ++i) {
      y[i] = f(x[i]);
      if (!std::isfinite(y[i])) throw QuadratureError("integrate: non-finite integrand");
    }
    res.evaluations += detail::kGkPoints;
    double k15, g7;
    detail::panel_rule(y, half, k15, g7);
    const double err = std::abs(k15 - g7);
    const double local_tol =
        std::max(opts.abs_tol * std::abs(p.b - p.a) / span, opts.rel_tol * std::abs(k15));
    if (err <= local_tol || p.depth >= opts.max_subdivisions) {
      res.value += k15;
      res.abs_error += err;
      if (std::abs(res.value) > opts.divergence_threshold) {
        res.diverged = true;
        return res;
      }
    } else {
      stack.push_back({p.a, center, p.depth + 1});
      stack.push_back({center, p.b, p.depth + 1});
    }
  }
  if (res.abs_error > std::max(opts.abs_tol, opts.rel_tol * std::abs(res.value)) * 16.0)
    throw QuadratureError("integrate: tolerance not reached");
  return res;
}

/// Integrates exp(logf(s)) over [a, b] for integrands spanning a huge dynamic
/// range. Panels are evaluated in log space so exponents far beyond double
/// range are handled; any panel (or the running total) exceeding the
/// divergence threshold reports divergence instead of overflowing.
inline IntegralResult integrate_exp(const std::function<double(double)>& logf, double a, double b,
                                    const QuadratureOptions& opts = {}) {
  IntegralResult res;
  if (a == b) return res;
  const double span = std::abs(b - a);
  const double log_threshold = std::log(opts.divergence_threshold);
  std::vector<detail::Panel> stack{{a, b, 0}};
  long panels = 0;
  while (!stack.empty()) {
    detail::Panel p = stack.back();
    stack.pop_back();
    if (++panels > detail::kMaxPanels)
      throw QuadratureError("integrate_exp: panel budget exhausted");
    const double center = 0.5 * (p.a + p.b);
    const double half = 0.5 * (p.b - p.a);
    double x[detail::kGkPoints], l[detail::kGkPoints];
    detail::panel_abscissae(center, half, x);
    bool blow_up = false;
    for (int i = 0; i < detail::kGkPoints; ++i) {
      l[i] = logf(x[i]);
      if (std::isnan(l[i])) throw QuadratureError("integrate_exp: NaN integrand");
      if (l[i] == std::numeric_limits<double>::infinity()) blow_up = true;
    }
    res.evaluations += detail::kGkPoints;
    if (blow_up) {
      // An infinite exponent inside the panel: refine toward it, call it
      // divergent once refinement is exhausted.
      if (p.depth >= opts.max_subdivisions) {
        res.diverged = true;
        return res;
      }
      stack.push_back({p.a, center, p.depth + 1});
      stack.push_back({center, p.b, p.depth + 1});
      continue;
    }
    double log_k15, log_g7;
    detail::log_rule(l, detail::kGkWeights, detail::kGaussWeights, half, log_k15, log_g7);
    if (log_k15 == -std::numeric_limits<double>::infinity()) continue;  // zero panel
    // Both embedded estimates put this single panel two orders of magnitude
    // past the threshold: divergent, no need to refine into the blow-up.
    if (std::min(log_k15, log_g7) > log_threshold + 5.0) {
      res.diverged = true;
      return res;
    }
    // |exp(lk) - exp(lg)| in log space.
    const double hi = std::max(log_k15, log_g7);
    const double err_log = hi + std::log1p(-std::exp(-std::abs(log_k15 - log_g7)));
    const double local_tol =
        std::max(opts.abs_tol * std::abs(p.b - p.a) / span, opts.rel_tol * std::exp(std::min(log_k15, 700.0)));
    const bool converged = err_log <= std::log(local_tol);
    if (converged || p.depth >= opts.max_subdivisions) {
      if (log_k15 > log_threshold) {
        res.diverged = true;
        return res;
      }
      res.value += std::exp(log_k15);
      res.abs_error += std::exp(err_log);
      if (res.value > opts.divergence_threshold) {
        res.diverged = true;
        return res;
      }
    } else {
      stack.push_back({p.a, center, p.depth + 1});
      stack.push_back({center, p.b, p.depth + 1});
    }
  }
  if (res.abs_error > std::max(opts.abs_tol, opts.rel_tol * res.value) * 16.0)
    throw QuadratureError("integrate_exp: tolerance not reached");
  return res;
}

/// Integration over [a, b] split at interior knots (e.g. polyline corners).
inline IntegralResult integrate_split(const std::function<double(double)>& f, double a, double b,
                                      const std::vector<double>& interior_knots,
                                      const QuadratureOptions& opts = {}) {
  IntegralResult total;
  double lo = a;
  auto step = [&](double hi) {
    IntegralResult part = integrate(f, lo, hi, opts);
    total.value += part.value;
    total.abs_error += part.abs_error;
    total.evaluations += part.evaluations;
    total.diverged = total.diverged || part.diverged ||
                     std::abs(total.value) > opts.divergence_threshold;
    lo = hi;
  };
  for (double k : interior_knots)
    if (k > lo && k < b && !total.diverged) step(k);
  if (!total.diverged) step(b);
  return total;
}

inline IntegralResult integrate_exp_split(const std::function<double(double)>& logf, double a,
                                          double b, const std::vector<double>& interior_knots,
                                          const QuadratureOptions& opts = {}) {
  IntegralResult total;
  double lo = a;
  auto step = [&](double hi) {
    IntegralResult part = integrate_exp(logf, lo, hi, opts);
    total.value += part.value;
    total.abs_error += part.abs_error;
    total.evaluations += part.evaluations;
    total.diverged =
        total.diverged || part.diverged || total.value > opts.divergence_threshold;
    lo = hi;
  };
  for (double k : interior_knots)
    if (k > lo && k < b && !total.diverged) step(k);
  if (!total.diverged) step(b);
  return total;
}

}  // namespace numscale
