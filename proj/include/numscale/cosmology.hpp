#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "numscale/core.hpp"
#include "numscale/fields.hpp"

namespace numscale {

/// Time-only scaling family Theta(s) = alpha ln(s / t_now), normalized so
/// Theta(t_now) = 0. alpha > 0 crushes all magnitudes toward zero at the
/// big-bang time; alpha < 0 is the divergent variant.
struct CrushProfile {
  double alpha = 2.0;
  double t_now = 14e9;  // present cosmological time (years by convention)
  double c = 1.0;       // signal speed (lightyears/year by convention)

  CrushProfile() = default;
  CrushProfile(double alpha_, double t_now_, double c_ = 1.0)
      : alpha(alpha_), t_now(t_now_), c(c_) {
    require(std::isfinite(alpha), "CrushProfile: alpha must be finite");
    require(t_now > 0.0 && std::isfinite(t_now), "CrushProfile: t_now must be positive");
    require(c > 0.0 && std::isfinite(c), "CrushProfile: c must be positive");
  }
};

inline ScalarField crush_field(const CrushProfile& p) {
  return cosmological_field(p.alpha, p.t_now);
}

/// Emission time of a signal on the past light cone of (t, z):
/// s = t - |x - z| / c. Times at or before the big bang are domain errors.
inline double lightcone_time(const CrushProfile& p, double t, const Point& x_spatial,
                             const Point& z_spatial) {
  if (t <= 0.0) throw DomainError("lightcone_time: t must be positive");
  double s = t - distance(x_spatial, z_spatial) / p.c;
  if (s <= 0.0) throw DomainError("lightcone_time: event at or before the big bang");
  return s;
}

/// exp(Theta(s)) = (s / t_now)^alpha; equals 1 at s = t_now.
inline double crush_factor(const CrushProfile& p, double s) {
  if (s <= 0.0) throw DomainError("crush_factor: s must be positive");
  return std::pow(s / p.t_now, p.alpha);
}

struct CrushRow {
  double s = 0.0;
  double lookback_distance = 0.0;
  double factor = 0.0;
};

/// Crush-factor curve, log-spaced from s = t_now down to t_now * 1e-6.
inline std::vector<CrushRow> crush_curve(const CrushProfile& p, int samples) {
  require(samples >= 2, "crush_curve: need at least two samples");
  std::vector<CrushRow> rows;
  rows.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    double frac = static_cast<double>(i) / (samples - 1);
    double s = p.t_now * std::pow(10.0, -6.0 * frac);
    rows.push_back({s, p.c * (p.t_now - s), crush_factor(p, s)});
  }
  return rows;
}

/// Applies the single crush factor at s to every quantity. One shared
/// multiplication: the scaled/raw ratio is identical across quantities
/// regardless of what they measure.
inline std::vector<std::pair<std::string, double>> uniform_scaling_check(
    const CrushProfile& p, double s,
    const std::vector<std::pair<std::string, double>>& quantities) {
  double factor = crush_factor(p, s);
  std::vector<std::pair<std::string, double>> scaled;
  scaled.reserve(quantities.size());
  for (const auto& [name, value] : quantities) scaled.emplace_back(name, factor * value);
  return scaled;
}

}  // namespace numscale
