#pragma once

#include <cmath>
#include <vector>

#include "numscale/core.hpp"
#include "numscale/fields.hpp"
#include "numscale/geometry.hpp"
#include "numscale/quadrature.hpp"

namespace numscale {

/// Spherically symmetric scaling hole Theta(s) = K/s about `center`, with
/// reference point x at radius r. K > 0 is a black hole (scaled distances
/// toward the center diverge), K < 0 a white hole (they compress).
struct HoleProfile {
  double K = 1.0;   // scaling strength, length units
  double r = 1.0;   // reference radius, > 0
  Point center{0.0, 0.0};

  HoleProfile() = default;
  HoleProfile(double K_, double r_, Point center_ = Point{0.0, 0.0})
      : K(K_), r(r_), center(std::move(center_)) {
    require(std::isfinite(K), "HoleProfile: K must be finite");
    require(r > 0.0 && std::isfinite(r), "HoleProfile: r must be positive");
  }

  bool black() const { return K > 0.0; }
};

/// The catalog field realizing this profile.
inline ScalarField hole_field(const HoleProfile& h) { return radial_field(h.K, h.center); }

/// Scaled distance from the reference point x (at radius r) toward the
/// center, as a function of the fractional unscaled distance w in [0,1):
///   r * int_0^w exp((K/r)(1/(1-z) - 1)) dz.
/// For K > 0 the integral blows up as w -> 1: past the divergence threshold
/// the result reports DIVERGED.
inline ScaledLengthResult hole_scaled_distance(const HoleProfile& h, double w,
                                               const QuadratureOptions& opts = {}) {
  const bool white = h.K <= 0.0;
  if (w < 0.0 || w > 1.0 || (!white && w >= 1.0))
    throw DomainError("hole_scaled_distance: w out of range");
  if (w == 0.0) return ScaledLengthResult::finite(0.0, 0.0, 0);
  const double kr = h.K / h.r;
  auto log_integrand = [kr](double z) { return kr * (1.0 / (1.0 - z) - 1.0); };
  IntegralResult res = integrate_exp(log_integrand, 0.0, w, opts);
  return ScaledLengthResult::from(res, h.r);
}

struct HoleCurveRow {
  double w = 0.0;
  double unscaled = 0.0;
  ScaledLengthResult scaled;
};

/// Sampled scaled/unscaled distance curve. Black holes truncate at
/// w_max = 0.99 (the true curve diverges at 1); white holes reach w = 1.
inline std::vector<HoleCurveRow> hole_curve(const HoleProfile& h, int samples,
                                            const QuadratureOptions& opts = {}) {
  require(samples >= 2, "hole_curve: need at least two samples");
  const double w_max = h.black() ? 0.99 : 1.0;
  std::vector<HoleCurveRow> rows;
  rows.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    double w = w_max * static_cast<double>(i) / (samples - 1);
    HoleCurveRow row;
    row.w = w;
    row.unscaled = h.r * w;
    row.scaled = hole_scaled_distance(h, w, opts);
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Scaled speed of a particle at fractional position t on the inward radius:
/// exp((K/r)(1/(1-t) - 1)), the t-derivative of the scaled distance over r.
inline double scaled_speed(const HoleProfile& h, double t) {
  if (t < 0.0 || t >= 1.0) throw DomainError("scaled_speed: t out of [0,1)");
  return std::exp((h.K / h.r) * (1.0 / (1.0 - t) - 1.0));
}

/// Scaled length from x outward to radius r + d, referenced to x:
/// int_0^d exp(K/(r+u) - K/r) du. The integrand is bounded.
inline ScaledLengthResult outward_scaled_distance(const HoleProfile& h, double d,
                                                  const QuadratureOptions& opts = {}) {
  if (d < 0.0) throw DomainError("outward_scaled_distance: d must be nonnegative");
  if (d == 0.0) return ScaledLengthResult::finite(0.0, 0.0, 0);
  const double kr = h.K / h.r;
  auto log_integrand = [&](double u) { return h.K / (h.r + u) - kr; };
  IntegralResult res = integrate_exp(log_integrand, 0.0, d, opts);
  return ScaledLengthResult::from(res);
}

}  // namespace numscale
