#pragma once

// Named property suites covering the library's documented invariants.
// Shared by the CLI `verify` subcommand and the test binaries: each check
// runs standalone with a deterministic per-check RNG and reports by name.

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "numscale/cosmology.hpp"
#include "numscale/dynamics.hpp"
#include "numscale/fields.hpp"
#include "numscale/geodesics.hpp"
#include "numscale/geometry.hpp"
#include "numscale/holes.hpp"
#include "numscale/path.hpp"
#include "numscale/quadrature.hpp"
#include "numscale/scaled_numbers.hpp"
#include "numscale/table.hpp"

namespace numscale::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline double rel_err(double a, double b) {
  double denom = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / denom;
}

// Log-uniform magnitude in [1e-6, 1e6] with random sign.
inline double draw_value(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> expo(-6.0, 6.0);
  std::bernoulli_distribution sign(0.5);
  double v = std::pow(10.0, expo(rng));
  return sign(rng) ? v : -v;
}

inline double draw_scale(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> expo(-6.0, 6.0);
  return std::pow(10.0, expo(rng));
}

inline Point draw_point(std::mt19937_64& rng, int dim, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Point p(dim);
  for (int i = 0; i < dim; ++i) p[i] = u(rng);
  return p;
}

struct Failure {
  bool failed = false;
  std::string detail;
  void record(const std::string& d) {
    if (!failed) detail = d;
    failed = true;
  }
};

}  // namespace detail

// ---------------------------------------------------------------- numbers

inline CheckResult check_field_axioms(std::mt19937_64& rng) {
  detail::Failure fail;
  constexpr double kTol = 1e-12;
  for (int i = 0; i < 10000 && !fail.failed; ++i) {
    ScaledReal s(detail::draw_scale(rng));
    double a = detail::draw_value(rng), b = detail::draw_value(rng),
           c = detail::draw_value(rng);
    if (detail::rel_err(s.mul(s.mul(a, b), c), s.mul(a, s.mul(b, c))) > kTol)
      fail.record("associativity violated");
    if (detail::rel_err(s.mul(a, b), s.mul(b, a)) > kTol) fail.record("commutativity violated");
    if (detail::rel_err(s.mul(a, s.one()), a) > kTol) fail.record("identity violated");
    if (detail::rel_err(s.mul(a, s.add(b, c)), s.add(s.mul(a, b), s.mul(a, c))) > kTol)
      fail.record("distributivity violated");
    if (b != 0.0 && detail::rel_err(s.div(s.mul(a, b), b), a) > kTol)
      fail.record("inverse violated");
  }
  return {"scaled_numbers/field_axioms", !fail.failed, fail.detail};
}

inline CheckResult check_zero_invariance(std::mt19937_64& rng) {
  detail::Failure fail;
  for (int i = 0; i < 1000 && !fail.failed; ++i) {
    ScaledReal s(detail::draw_scale(rng));
    if (s.correspond(0.0) != 0.0) fail.record("correspond(0) != 0");
  }
  return {"scaled_numbers/zero_invariance", !fail.failed, fail.detail};
}

inline CheckResult check_unscaled_reduction(std::mt19937_64& rng) {
  detail::Failure fail;
  ScaledReal s(1.0);
  for (int i = 0; i < 10000 && !fail.failed; ++i) {
    double a = detail::draw_value(rng), b = detail::draw_value(rng);
    if (s.add(a, b) != a + b) fail.record("add differs at r=1");
    if (s.sub(a, b) != a - b) fail.record("sub differs at r=1");
    if (s.mul(a, b) != a * b) fail.record("mul differs at r=1");
    if (b != 0.0 && s.div(a, b) != a / b) fail.record("div differs at r=1");
    if (s.correspond(a) != a) fail.record("correspond differs at r=1");
  }
  return {"scaled_numbers/unscaled_reduction", !fail.failed, fail.detail};
}

inline CheckResult check_square_scaling(std::mt19937_64& rng) {
  detail::Failure fail;
  for (int i = 0; i < 10000 && !fail.failed; ++i) {
    ScaledReal s(detail::draw_scale(rng));
    double a = detail::draw_value(rng);
    double lhs = s.mul(s.correspond(a), s.correspond(a));
    double rhs = s.correspond(a * a);
    if (detail::rel_err(lhs, rhs) > 1e-12) fail.record("square scaling violated");
    if (detail::rel_err(rhs, s.scale() * a * a) > 1e-12) fail.record("r*a^2 form violated");
  }
  return {"scaled_numbers/square_scaling", !fail.failed, fail.detail};
}

inline CheckResult check_transport_composition(std::mt19937_64& rng) {
  detail::Failure fail;
  ScalarField f = linear_field(0.7, Vec{1.0, -0.5});
  for (int i = 0; i < 200 && !fail.failed; ++i) {
    Point x = detail::draw_point(rng, 2, -3.0, 3.0);
    Point y = detail::draw_point(rng, 2, -3.0, 3.0);
    Point z = detail::draw_point(rng, 2, -3.0, 3.0);
    auto zy = TransportMap::from_field(f, z, y);
    auto yx = TransportMap::from_field(f, y, x);
    auto zx = TransportMap::from_field(f, z, x);
    if (detail::rel_err(zy.compose(yx).factor(), zx.factor()) > 1e-12)
      fail.record("transport factors not multiplicative");
  }
  return {"scaled_numbers/transport_composition", !fail.failed, fail.detail};
}

inline CheckResult check_scaled_norm(std::mt19937_64& rng) {
  detail::Failure fail;
  std::uniform_int_distribution<int> dims(1, 8);
  std::uniform_real_distribution<double> comp(-5.0, 5.0);
  for (int i = 0; i < 2000 && !fail.failed; ++i) {
    int n = dims(rng);
    double r = detail::draw_scale(rng);
    ScaledVectorSpace<double> vs(n, r);
    std::vector<double> v(static_cast<std::size_t>(n));
    double nrm2 = 0.0;
    for (auto& c : v) {
      c = comp(rng);
      nrm2 += c * c;
    }
    double inner = vs.inner(v, v);
    if (detail::rel_err(inner, r * nrm2) > 1e-12) fail.record("inner(v,v) != r*|v|^2");
    if (nrm2 > 0.0 && inner <= 0.0) fail.record("positivity lost");
  }
  return {"scaled_numbers/scaled_norm", !fail.failed, fail.detail};
}

// ----------------------------------------------------------------- fields

namespace detail {

inline Path random_polyline(std::mt19937_64& rng, const Point& a, const Point& b,
                            int interior_nodes) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> nodes{a};
  for (int k = 1; k <= interior_nodes; ++k) {
    double t = static_cast<double>(k) / (interior_nodes + 1);
    Point p = a + t * (b - a);
    for (int i = 0; i < p.dim(); ++i) p[i] += 0.4 * u(rng);
    nodes.push_back(p);
  }
  nodes.push_back(b);
  return Path::polyline(std::move(nodes));
}

inline std::vector<ScalarField> gradient_catalog_2d() {
  std::vector<ScalarField> fields;
  fields.push_back(constant_field(0.4));
  fields.push_back(linear_field(0.8, Vec{1.0, 2.0}));
  fields.push_back(radial_field(0.5, Point{4.0, 4.0}));  // center away from samples
  return fields;
}

}  // namespace detail

inline CheckResult check_path_independence(std::mt19937_64& rng) {
  detail::Failure fail;
  auto fields = detail::gradient_catalog_2d();
  for (int i = 0; i < 100 && !fail.failed; ++i) {
    const ScalarField& f = fields[static_cast<std::size_t>(i) % fields.size()];
    VectorField A = VectorField::gradient_of(f);
    Point a = detail::draw_point(rng, 2, -1.5, 1.5);
    Point b = detail::draw_point(rng, 2, -1.5, 1.5);
    if (distance(a, b) < 1e-3) continue;
    Path p1 = detail::random_polyline(rng, a, b, 3);
    Path p2 = detail::random_polyline(rng, a, b, 4);
    double expect = scale_factor_gradient(f, b, a);
    if (detail::rel_err(scale_factor_path(A, p1), expect) > 1e-8 ||
        detail::rel_err(scale_factor_path(A, p2), expect) > 1e-8)
      fail.record("path factor disagrees with endpoint formula");
  }
  return {"scaling_fields/path_independence", !fail.failed, fail.detail};
}

inline CheckResult check_loop_triviality(std::mt19937_64& rng) {
  detail::Failure fail;
  auto fields = detail::gradient_catalog_2d();
  for (int i = 0; i < 60 && !fail.failed; ++i) {
    const ScalarField& f = fields[static_cast<std::size_t>(i) % fields.size()];
    VectorField A = VectorField::gradient_of(f);
    Point a = detail::draw_point(rng, 2, -1.5, 1.5);
    std::vector<Point> nodes{a};
    for (int k = 0; k < 4; ++k) nodes.push_back(detail::draw_point(rng, 2, -1.5, 1.5));
    nodes.push_back(a);
    double factor = scale_factor_path(A, Path::polyline(std::move(nodes)));
    if (std::abs(factor - 1.0) > 1e-8) fail.record("closed loop factor differs from 1");
  }
  return {"scaling_fields/loop_triviality", !fail.failed, fail.detail};
}

inline CheckResult check_multiplicativity(std::mt19937_64& rng) {
  detail::Failure fail;
  auto fields = detail::gradient_catalog_2d();
  for (int i = 0; i < 200 && !fail.failed; ++i) {
    const ScalarField& f = fields[static_cast<std::size_t>(i) % fields.size()];
    Point x = detail::draw_point(rng, 2, -1.5, 1.5);
    Point y = detail::draw_point(rng, 2, -1.5, 1.5);
    Point z = detail::draw_point(rng, 2, -1.5, 1.5);
    double lhs = scale_factor_gradient(f, z, y) * scale_factor_gradient(f, y, x);
    double rhs = scale_factor_gradient(f, z, x);
    if (detail::rel_err(lhs, rhs) > 1e-12) fail.record("factors not multiplicative");
  }
  return {"scaling_fields/multiplicativity", !fail.failed, fail.detail};
}

inline CheckResult check_gradient_consistency(std::mt19937_64& rng) {
  detail::Failure fail;
  struct Case {
    ScalarField field;
    int dim;
    Point singular;
    bool has_singularity;
  };
  std::vector<Case> cases;
  cases.push_back({constant_field(1.2), 2, Point{0.0, 0.0}, false});
  cases.push_back({linear_field(1.7, Vec{0.3, -1.0}), 2, Point{0.0, 0.0}, false});
  cases.push_back({radial_field(1.0, Point{0.0, 0.0}), 2, Point{0.0, 0.0}, true});
  cases.push_back({cosmological_field(2.0, 10.0), 1, Point{0.0}, true});  // singular at t=0
  for (const Case& c : cases) {
    int tested = 0;
    while (tested < 100 && !fail.failed) {
      Point p = c.dim == 1 ? Point{std::uniform_real_distribution<double>(0.05, 20.0)(rng)}
                           : detail::draw_point(rng, c.dim, -2.0, 2.0);
      if (c.has_singularity && c.dim > 1 && distance(p, c.singular) < 1e-3) continue;
      ++tested;
      Vec analytic = c.field.gradient(p);
      Vec fd(p.dim());
      for (int i = 0; i < p.dim(); ++i) {
        double h = std::max(1e-6, 1e-6 * std::abs(p[i]));
        Point pp = p, pm = p;
        pp[i] += h;
        pm[i] -= h;
        fd[i] = (c.field.value(pp) - c.field.value(pm)) / (2.0 * h);
      }
      double scale = std::max(analytic.norm(), 1e-12);
      if ((analytic - fd).norm() / scale > 1e-5)
        fail.record("analytic gradient disagrees with finite differences");
    }
  }
  return {"scaling_fields/gradient_consistency", !fail.failed, fail.detail};
}

inline CheckResult check_non_gradient_detection(std::mt19937_64&) {
  VectorField A = rotational_vector_field(1.0);
  constexpr double kPi = 3.14159265358979323846;
  double factor = scale_factor_path(A, Path::circle_arc(Point{0.0, 0.0}, 1.0, 0.0, 2.0 * kPi));
  // Green's theorem route: exp(curl * enclosed area) = exp(pi).
  double expected = std::exp(kPi);
  bool pass = std::abs(factor - 1.0) > 10.0 && detail::rel_err(factor, expected) < 1e-6;
  std::ostringstream os;
  os << "loop factor " << factor << " vs e^pi " << expected;
  return {"scaling_fields/non_gradient_detection", pass, pass ? "" : os.str()};
}

// --------------------------------------------------------------- geometry

inline CheckResult check_external_factor_separability(std::mt19937_64& rng) {
  detail::Failure fail;
  for (int i = 0; i < 30 && !fail.failed; ++i) {
    std::uniform_real_distribution<double> ku(-1.0, 1.0);
    ScalarField f = linear_field(1.0 + std::abs(ku(rng)), Vec{ku(rng) + 1.5, ku(rng)});
    Point a = detail::draw_point(rng, 2, -1.0, 1.0);
    Point b = detail::draw_point(rng, 2, -1.0, 1.0);
    if (distance(a, b) < 1e-3) continue;
    Path p = detail::random_polyline(rng, a, b, 2);
    Point ref = detail::draw_point(rng, 2, -1.0, 1.0);
    Point ref0 = Point{0.0, 0.0};  // linear fields vanish at the origin
    double with_ref = path_length_scaled(p, f, ref).value();
    double with_ref0 = path_length_scaled(p, f, ref0).value();
    if (detail::rel_err(with_ref, std::exp(-f.value(ref)) * with_ref0) > 1e-9)
      fail.record("external factor not separable");
  }
  return {"geometry/external_factor_separability", !fail.failed, fail.detail};
}

inline CheckResult check_reparameterization_invariance(std::mt19937_64&) {
  detail::Failure fail;
  ScalarField f = linear_field(0.9, Vec{1.0, 0.4});
  Point a{0.1, -0.2}, b{1.3, 0.8}, ref{0.0, 0.0};
  Vec d = b - a;
  Path straight = Path::segment(a, b);
  Path quadratic([a, d](double s) { return a + (s * s) * d; });
  constexpr double kPi = 3.14159265358979323846;
  Path cosine([a, d, kPi](double s) { return a + (0.5 * (1.0 - std::cos(kPi * s))) * d; });
  double ref_len = path_length(straight).value();
  double ref_scaled = path_length_scaled(straight, f, ref).value();
  for (const Path* p : {&quadratic, &cosine}) {
    if (detail::rel_err(path_length(*p).value(), ref_len) > 1e-9)
      fail.record("unscaled length changed under reparameterization");
    if (detail::rel_err(path_length_scaled(*p, f, ref).value(), ref_scaled) > 1e-9)
      fail.record("scaled length changed under reparameterization");
  }
  return {"geometry/reparameterization_invariance", !fail.failed, fail.detail};
}

inline CheckResult check_additivity(std::mt19937_64& rng) {
  detail::Failure fail;
  ScalarField f = linear_field(0.8, Vec{0.7, -0.3});
  Point ref{0.0, 0.0};
  for (int i = 0; i < 30 && !fail.failed; ++i) {
    Point a = detail::draw_point(rng, 2, -1.0, 1.0);
    Point m = detail::draw_point(rng, 2, -1.0, 1.0);
    Point b = detail::draw_point(rng, 2, -1.0, 1.0);
    if (distance(a, m) < 1e-3 || distance(m, b) < 1e-3) continue;
    double whole = path_length_scaled(Path::polyline({a, m, b}), f, ref).value();
    double parts = path_length_scaled(Path::segment(a, m), f, ref).value() +
                   path_length_scaled(Path::segment(m, b), f, ref).value();
    if (detail::rel_err(whole, parts) > 1e-10) fail.record("concatenation not additive");
  }
  return {"geometry/additivity", !fail.failed, fail.detail};
}

inline CheckResult check_monotone_divergence(std::mt19937_64&) {
  detail::Failure fail;
  HoleProfile black(1.0, 1.0);
  double prev = 0.0;
  for (double w : {0.1, 0.3, 0.5, 0.7, 0.85, 0.9, 0.95}) {
    double v = hole_scaled_distance(black, w).value();
    if (v < prev) fail.record("partial scaled length not monotone");
    prev = v;
  }
  if (!hole_scaled_distance(black, 0.9999).is_diverged())
    fail.record("no divergence report near w=1");
  return {"geometry/monotone_divergence", !fail.failed, fail.detail};
}

inline CheckResult check_quadrature_correctness(std::mt19937_64&) {
  detail::Failure fail;
  constexpr double kPi = 3.14159265358979323846;
  const double e = std::exp(1.0);
  struct Case {
    std::function<double(double)> f;
    double a, b, exact;
  };
  const std::vector<Case> cases = {
      {[](double) { return 1.0; }, 0, 1, 1.0},
      {[](double x) { return x; }, 0, 1, 0.5},
      {[](double x) { return x * x; }, 0, 1, 1.0 / 3.0},
      {[](double x) { return x * x * x; }, -1, 1, 0.0},
      {[](double x) { return x * x * x * x; }, 0, 2, 32.0 / 5.0},
      {[](double x) { return std::exp(x); }, 0, 1, e - 1.0},
      {[](double x) { return std::exp(-x); }, 0, 2, 1.0 - std::exp(-2.0)},
      {[](double x) { return std::sin(x); }, 0, kPi, 2.0},
      {[](double x) { return std::cos(x); }, 0, kPi / 2.0, 1.0},
      {[](double x) { return 1.0 / (1.0 + x * x); }, 0, 1, kPi / 4.0},
      {[](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3.0},
      {[](double x) { return std::log(1.0 + x); }, 0, 1, 2.0 * std::log(2.0) - 1.0},
      {[](double x) { return x * std::exp(-x * x); }, 0, 1, 0.5 * (1.0 - std::exp(-1.0))},
      {[](double x) { return std::cosh(x); }, 0, 1, std::sinh(1.0)},
      {[](double x) { return std::sinh(x); }, 0, 1, std::cosh(1.0) - 1.0},
      {[](double x) { return x * std::sin(x); }, 0, kPi, kPi},
      {[](double x) { return 1.0 / x; }, 1, e, 1.0},
      {[](double x) { return 1.0 / std::sqrt(x); }, 1, 4, 2.0},
      {[](double x) { return std::sin(10.0 * x); }, 0, kPi, (1.0 - std::cos(10.0 * kPi)) / 10.0},
      {[](double x) { return std::exp(2.0 * x) * std::cos(x); }, 0, 1,
       (std::exp(2.0) * (2.0 * std::cos(1.0) + std::sin(1.0)) - 2.0) / 5.0},
  };
  QuadratureOptions opts;
  int idx = 0;
  for (const Case& c : cases) {
    IntegralResult r = integrate(c.f, c.a, c.b, opts);
    double tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(c.exact)) * 16.0;
    if (std::abs(r.value - c.exact) > tol) {
      std::ostringstream os;
      os << "integrand " << idx << ": got " << r.value << " want " << c.exact;
      fail.record(os.str());
    }
    ++idx;
  }
  return {"geometry/quadrature_correctness", !fail.failed, fail.detail};
}

// -------------------------------------------------------------- geodesics

inline CheckResult check_geodesic_gradient(std::mt19937_64& rng) {
  detail::Failure fail;
  ScalarField f = linear_field(1.2, Vec{0.5, 1.0});
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (int trial = 0; trial < 10 && !fail.failed; ++trial) {
    std::vector<Point> nodes;
    int n = 8;
    for (int k = 0; k <= n; ++k) {
      Point p{static_cast<double>(k) / n, 0.0};
      if (k > 0 && k < n) {
        p[0] += u(rng) * 0.3;
        p[1] += u(rng);
      }
      nodes.push_back(p);
    }
    DiscretePath dp(nodes);
    Point ref = nodes.front();
    auto grad = discrete_length_gradient(dp, f, ref);
    for (int j = 1; j < n && !fail.failed; ++j) {
      for (int c = 0; c < 2; ++c) {
        double h = 1e-6;
        auto plus = nodes, minus = nodes;
        plus[static_cast<std::size_t>(j)][c] += h;
        minus[static_cast<std::size_t>(j)][c] -= h;
        double fd = (discrete_scaled_length(DiscretePath(plus), f, ref) -
                     discrete_scaled_length(DiscretePath(minus), f, ref)) /
                    (2.0 * h);
        if (std::abs(fd) > 1e-10 && detail::rel_err(fd, grad[static_cast<std::size_t>(j)][c]) > 1e-4)
          fail.record("analytic gradient disagrees with finite differences");
      }
    }
  }
  return {"geodesics/analytic_gradient_check", !fail.failed, fail.detail};
}

inline CheckResult check_descent_monotone(std::mt19937_64&) {
  detail::Failure fail;
  ScalarField f = linear_field(1.0, Vec{0.0, 1.0});
  OptimizerOptions opts;
  opts.nodes = 32;
  opts.gradient_tolerance = 1e-6;
  opts.max_iterations = 50000;
  auto res = minimize_scaled_length_traced(Point{0.0, 0.0}, Point{1.0, 0.0}, f, opts);
  for (std::size_t i = 1; i < res.objective_history.size(); ++i)
    if (res.objective_history[i] > res.objective_history[i - 1])
      fail.record("objective increased across an accepted iteration");
  return {"geodesics/descent_monotone", !fail.failed, fail.detail};
}

inline CheckResult check_endpoint_pinning(std::mt19937_64& rng) {
  detail::Failure fail;
  ScalarField f = linear_field(0.8, Vec{0.3, 1.0});
  for (int i = 0; i < 5 && !fail.failed; ++i) {
    Point a = detail::draw_point(rng, 2, -1.0, 1.0);
    Point b = detail::draw_point(rng, 2, -1.0, 1.0);
    if (distance(a, b) < 0.1) continue;
    OptimizerOptions opts;
    opts.nodes = 16;
    opts.gradient_tolerance = 1e-3;
    opts.max_iterations = 50000;
    DiscretePath p = minimize_scaled_length(a, b, f, opts);
    if (!(p.node(0) == a) || !(p.node(p.segments()) == b))
      fail.record("endpoints moved during optimization");
  }
  return {"geodesics/endpoint_pinning", !fail.failed, fail.detail};
}

inline CheckResult check_constant_theta_consistency(std::mt19937_64& rng) {
  detail::Failure fail;
  ScalarField f = constant_field(0.7);
  for (int i = 0; i < 100 && !fail.failed; ++i) {
    Point a = detail::draw_point(rng, 2, -5.0, 5.0);
    Point b = detail::draw_point(rng, 2, -5.0, 5.0);
    if (distance(a, b) < 1e-2) continue;
    double d = distance_scaled(a, b, f);
    if (detail::rel_err(d, distance(a, b)) > 1e-8)
      fail.record("constant-field distance differs from Euclidean");
  }
  return {"geodesics/constant_theta_consistency", !fail.failed, fail.detail};
}

inline CheckResult check_minimizer_optimality(std::mt19937_64& rng) {
  detail::Failure fail;
  ScalarField f = linear_field(1.0, Vec{0.0, 1.0});
  Point a{0.0, 0.0}, b{1.0, 0.0};
  OptimizerOptions opts;
  opts.nodes = 32;
  opts.gradient_tolerance = 1e-6;
  opts.max_iterations = 50000;
  DiscretePath best = minimize_scaled_length(a, b, f, opts);
  double d = discrete_scaled_length(best, f, a);
  double chord = discrete_scaled_length(DiscretePath::chord(a, b, opts.nodes), f, a);
  if (d > chord * (1.0 + 1e-12)) fail.record("minimizer exceeds straight chord");
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int trial = 0; trial < 20 && !fail.failed; ++trial) {
    std::vector<Point> nodes = DiscretePath::chord(a, b, opts.nodes).nodes();
    for (std::size_t k = 1; k + 1 < nodes.size(); ++k) {
      nodes[k][0] += 0.2 * u(rng);
      nodes[k][1] += u(rng);
    }
    double perturbed = discrete_scaled_length(DiscretePath(nodes), f, a);
    if (d > perturbed * (1.0 + 1e-12)) fail.record("a perturbed path beat the minimizer");
  }
  return {"geodesics/minimizer_optimality", !fail.failed, fail.detail};
}

inline CheckResult check_el_consistency(std::mt19937_64&) {
  detail::Failure fail;
  ScalarField f = linear_field(1.0, Vec{0.0, 1.0});
  Point a{0.0, 0.0}, b{1.0, 0.0};
  auto max_residual = [&](int segments) {
    OptimizerOptions opts;
    opts.nodes = segments;
    opts.gradient_tolerance = 1e-7;
    opts.max_iterations = 100000;
    DiscretePath p = minimize_scaled_length(a, b, f, opts);
    double worst = 0.0;
    for (const Vec& r : el_residual(p, f)) worst = std::max(worst, r.norm());
    return worst;
  };
  double coarse = max_residual(16);
  double fine = max_residual(32);
  if (!(fine < coarse)) fail.record("EL residual did not decrease under refinement");
  std::ostringstream os;
  os << "residual " << coarse << " -> " << fine;
  return {"geodesics/el_consistency", !fail.failed, fail.failed ? fail.detail : os.str()};
}

// ------------------------------------------------------------------ holes

inline CheckResult check_hole_machinery_consistency(std::mt19937_64&) {
  detail::Failure fail;
  struct Case {
    double K, r, w;
  };
  for (const Case& c : {Case{1.0, 1.0, 0.7}, Case{-1.0, 1.0, 0.9}, Case{0.5, 2.0, 0.8}}) {
    HoleProfile h(c.K, c.r);
    double closed = hole_scaled_distance(h, c.w).value();
    // Radial path from the reference point toward the center, general field.
    Point x{c.r, 0.0};
    Point y{c.r * (1.0 - c.w), 0.0};
    ScalarField f = hole_field(h);
    double general = path_length_scaled(Path::segment(x, y), f, x).value();
    if (detail::rel_err(closed, general) > 1e-8)
      fail.record("closed form disagrees with path_length_scaled");
  }
  return {"holes/general_machinery_consistency", !fail.failed, fail.detail};
}

inline CheckResult check_black_white_duality(std::mt19937_64&) {
  detail::Failure fail;
  HoleProfile black(1.0, 1.0), white(-1.0, 1.0);
  for (int i = 0; i <= 40; ++i) {
    double z = 0.975 * i / 40.0;
    double fb = std::exp((black.K / black.r) * (1.0 / (1.0 - z) - 1.0));
    double fw = std::exp((white.K / white.r) * (1.0 / (1.0 - z) - 1.0));
    if (detail::rel_err(fb * fw, 1.0) > 1e-12) fail.record("integrands not reciprocal");
  }
  return {"holes/black_white_duality", !fail.failed, fail.detail};
}

inline CheckResult check_hole_monotonicity(std::mt19937_64&) {
  detail::Failure fail;
  for (double K : {1.0, -1.0}) {
    HoleProfile h(K, 1.0);
    double prev = -1.0;
    for (int i = 1; i <= 19; ++i) {
      double w = 0.05 * i;
      double v = hole_scaled_distance(h, w).value();
      if (v <= prev) fail.record("scaled distance not strictly increasing in w");
      prev = v;
    }
  }
  return {"holes/monotonicity", !fail.failed, fail.detail};
}

inline CheckResult check_hole_divergence(std::mt19937_64&) {
  HoleProfile black(1.0, 1.0);
  ScaledLengthResult r = hole_scaled_distance(black, 0.999);
  bool pass = r.is_diverged() || r.value() > 1e6 * black.r;
  return {"holes/divergence", pass, pass ? "" : "no divergence at w=0.999"};
}

inline CheckResult check_speed_length_consistency(std::mt19937_64&) {
  detail::Failure fail;
  QuadratureOptions opts;
  for (double K : {1.0, -1.0}) {
    HoleProfile h(K, 1.0);
    double t_hi = K > 0.0 ? 0.8 : 0.95;
    for (int i = 1; i <= 25 && !fail.failed; ++i) {
      double t = t_hi * i / 26.0;
      double dt = 1e-5;
      double plus = hole_scaled_distance(h, t + dt, opts).value();
      double minus = hole_scaled_distance(h, t - dt, opts).value();
      double numeric = (plus - minus) / (2.0 * dt) / h.r;
      if (detail::rel_err(numeric, scaled_speed(h, t)) > 1e-6)
        fail.record("numerical speed disagrees with closed form");
    }
  }
  return {"holes/speed_length_consistency", !fail.failed, fail.detail};
}

// -------------------------------------------------------------- cosmology

inline CheckResult check_factor_equality(std::mt19937_64& rng) {
  detail::Failure fail;
  CrushProfile p(2.0, 14e9);
  std::uniform_real_distribution<double> su(0.01, 1.0);
  for (int i = 0; i < 50 && !fail.failed; ++i) {
    double s = su(rng) * p.t_now;
    std::vector<std::pair<std::string, double>> q = {
        {"wavelength", 5e-7}, {"frequency", 6e14}, {"speed", 3e8}, {"misc", detail::draw_value(rng)}};
    auto scaled = uniform_scaling_check(p, s, q);
    double factor = crush_factor(p, s);
    for (std::size_t k = 0; k < q.size(); ++k) {
      if (q[k].second == 0.0) continue;
      if (detail::rel_err(scaled[k].second / q[k].second, factor) > 1e-15)
        fail.record("ratios differ across quantities");
    }
  }
  return {"cosmology/factor_equality", !fail.failed, fail.detail};
}

inline CheckResult check_crush_equation_invariance(std::mt19937_64& rng) {
  detail::Failure fail;
  CrushProfile p(2.0, 14e9);
  std::uniform_real_distribution<double> su(0.001, 1.0);
  for (int i = 0; i < 2000 && !fail.failed; ++i) {
    double s = su(rng) * p.t_now;
    double factor = crush_factor(p, s);
    if (factor <= 0.0 || !std::isfinite(factor)) {
      fail.record("crush factor not positive finite");
      break;
    }
    ScaledReal structure(factor);
    double c = std::abs(detail::draw_value(rng));
    double g = std::abs(detail::draw_value(rng));
    if (!structure.equation_invariant(c, g)) fail.record("lambda = c / gamma not invariant");
  }
  return {"cosmology/equation_invariance_under_crush", !fail.failed, fail.detail};
}

inline CheckResult check_crush_boundary(std::mt19937_64&) {
  detail::Failure fail;
  CrushProfile p(2.0, 14e9);
  if (crush_factor(p, p.t_now) != 1.0) fail.record("crush_factor(t_now) != 1");
  double prev = 1.0;
  for (int i = 1; i <= 12; ++i) {
    double s = p.t_now * std::pow(10.0, -0.5 * i);
    double f = crush_factor(p, s);
    if (!(f < prev)) fail.record("factor not monotone toward 0");
    prev = f;
  }
  if (!(prev < 1e-10)) fail.record("factor does not approach 0");
  return {"cosmology/boundary", !fail.failed, fail.detail};
}

inline CheckResult check_lightcone_consistency(std::mt19937_64& rng) {
  detail::Failure fail;
  CrushProfile p(2.0, 100.0, 2.0);
  Point z{0.0, 0.0, 0.0};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100 && !fail.failed; ++i) {
    double d1 = 50.0 * u(rng), d2 = 50.0 * u(rng);
    if (d1 == d2) continue;
    double near_d = std::min(d1, d2), far_d = std::max(d1, d2);
    double s_near = lightcone_time(p, p.t_now, Point{near_d, 0.0, 0.0}, z);
    double s_far = lightcone_time(p, p.t_now, Point{far_d, 0.0, 0.0}, z);
    if (!(s_near > s_far)) fail.record("lightcone time not increasing with proximity");
  }
  return {"cosmology/lightcone_consistency", !fail.failed, fail.detail};
}

// --------------------------------------------------------------- dynamics

inline CheckResult check_dynamics_linearity(std::mt19937_64& rng) {
  detail::Failure fail;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  VectorField A = VectorField::gradient_of(linear_field(0.7, Vec{1.0}));
  ScalarField f = linear_field(0.5, Vec{1.0});
  Point ref{0.0};
  for (int trial = 0; trial < 20 && !fail.failed; ++trial) {
    int n = 16;
    std::vector<std::complex<double>> uv(static_cast<std::size_t>(n)), vv(uv), combo(uv);
    std::complex<double> alpha(u(rng), u(rng)), beta(u(rng), u(rng));
    for (int k = 0; k < n; ++k) {
      uv[static_cast<std::size_t>(k)] = {u(rng), u(rng)};
      vv[static_cast<std::size_t>(k)] = {u(rng), u(rng)};
      combo[static_cast<std::size_t>(k)] =
          alpha * uv[static_cast<std::size_t>(k)] + beta * vv[static_cast<std::size_t>(k)];
    }
    Grid1D gu(0.0, 0.1, uv), gv(0.0, 0.1, vv), gc(0.0, 0.1, combo);
    auto op = [&](const Grid1D& g, int which) {
      return which == 0 ? scaled_derivative(g, A) : wavepacket_rescale(g, f, ref);
    };
    for (int which = 0; which < 2; ++which) {
      Grid1D lhs = op(gc, which);
      Grid1D ru = op(gu, which);
      Grid1D rv = op(gv, which);
      for (int k = 0; k < n; ++k) {
        std::complex<double> want = alpha * ru.values[static_cast<std::size_t>(k)] +
                                    beta * rv.values[static_cast<std::size_t>(k)];
        if (std::abs(lhs.values[static_cast<std::size_t>(k)] - want) > 1e-12)
          fail.record("operator not linear in psi");
      }
    }
  }
  return {"scaled_dynamics/linearity", !fail.failed, fail.detail};
}

inline CheckResult check_dynamics_reduction(std::mt19937_64&) {
  detail::Failure fail;
  ScalarField zero = constant_field(0.0);
  VectorField a0 = VectorField::gradient_of(zero);
  // derivative reduces to the plain finite difference
  int n = 64;
  std::vector<std::complex<double>> psi(static_cast<std::size_t>(n));
  double dx = 0.05;
  for (int k = 0; k < n; ++k) psi[static_cast<std::size_t>(k)] = std::sin(0.3 * k * dx);
  Grid1D g(0.0, dx, psi);
  Grid1D d = scaled_derivative(g, a0);
  for (int k = 1; k + 1 < n; ++k) {
    std::complex<double> plain =
        (psi[static_cast<std::size_t>(k + 1)] - psi[static_cast<std::size_t>(k - 1)]) /
        (2.0 * dx);
    if (std::abs(d.values[static_cast<std::size_t>(k)] - plain) > 1e-14)
      fail.record("A=0 derivative differs from plain finite difference");
  }
  // rescale with constant Theta equal at ref leaves the grid unchanged
  Grid1D r = wavepacket_rescale(g, zero, Point{0.0});
  for (int k = 0; k < n; ++k)
    if (r.values[static_cast<std::size_t>(k)] != psi[static_cast<std::size_t>(k)])
      fail.record("Theta=0 rescale changed the grid");
  // action with Theta=0 equals the unscaled free action
  Path straight = Path::segment(Point{0.0}, Point{2.0});
  double action = scaled_action(straight, LagrangianSpec::free_particle(1.5), zero, Point{0.0},
                                0.0, 2.0);
  if (detail::rel_err(action, 0.5 * 1.5 * 1.0 * 1.0 * 2.0) > 1e-10)
    fail.record("free action mismatch");
  // covariant derivative reduces to the velocity
  Vec v = covariant_time_derivative(straight, a0, 0.3);
  if (detail::rel_err(v[0], 2.0) > 1e-12) fail.record("A=0 covariant derivative != velocity");
  return {"scaled_dynamics/reduction", !fail.failed, fail.detail};
}

inline CheckResult check_dynamics_convergence_order(std::mt19937_64&) {
  detail::Failure fail;
  VectorField A = VectorField::gradient_of(linear_field(0.4, Vec{1.0}));
  double k_wave = 1.3;
  auto run = [&](int n) {
    double dx = 2.0 / n;
    std::vector<std::complex<double>> psi(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
      double x = k * dx;
      psi[static_cast<std::size_t>(k)] =
          std::exp(std::complex<double>(0.0, k_wave * x));
    }
    Grid1D g(0.0, dx, psi);
    Grid1D d = scaled_derivative(g, A);
    double worst = 0.0;
    for (int k = 1; k < n; ++k) {
      double x = k * dx;
      std::complex<double> exact =
          (std::complex<double>(0.0, k_wave) + 0.4) *
          std::exp(std::complex<double>(0.0, k_wave * x));
      worst = std::max(worst, std::abs(d.values[static_cast<std::size_t>(k)] - exact));
    }
    return worst;
  };
  double e1 = run(64), e2 = run(128), e3 = run(256);
  double slope1 = std::log2(e1 / e2), slope2 = std::log2(e2 / e3);
  double slope = 0.5 * (slope1 + slope2);
  bool pass = std::abs(slope - 2.0) <= 0.1;
  std::ostringstream os;
  os << "observed order " << slope;
  return {"scaled_dynamics/convergence_order", pass, os.str()};
}

inline CheckResult check_action_variation_sanity(std::mt19937_64& rng) {
  detail::Failure fail;
  ScalarField zero = constant_field(0.0);
  LagrangianSpec free_particle = LagrangianSpec::free_particle(1.0);
  Point a{0.0, 0.0}, b{1.0, 0.5}, ref{0.0, 0.0};
  double best = scaled_action(Path::segment(a, b), free_particle, zero, ref, 0.0, 1.0);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  constexpr double kPi = 3.14159265358979323846;
  for (int trial = 0; trial < 20 && !fail.failed; ++trial) {
    Vec bump{u(rng), u(rng)};
    if (bump.norm() < 1e-3) continue;
    Vec d = b - a;
    Path wiggly([a, d, bump, kPi](double s) { return a + s * d + std::sin(kPi * s) * bump; },
                [d, bump, kPi](double s) { return d + kPi * std::cos(kPi * s) * bump; });
    double perturbed = scaled_action(wiggly, free_particle, zero, ref, 0.0, 1.0);
    if (best > perturbed) fail.record("straight path is not the action minimizer");
  }
  return {"scaled_dynamics/action_variation_sanity", !fail.failed, fail.detail};
}

// -------------------------------------------------------------------- cli

inline CheckResult check_cli_determinism(std::mt19937_64&) {
  namespace fs = std::filesystem;
  detail::Failure fail;
  Table t;
  t.header = {"w", "unscaled", "scaled"};
  for (const HoleCurveRow& row : hole_curve(HoleProfile(1.0, 1.0), 24)) {
    std::vector<TableCell> cells{row.w, row.unscaled,
                                 row.scaled.is_diverged() ? kDiverged
                                                           : TableCell(row.scaled.value())};
    t.rows.push_back(std::move(cells));
  }
  fs::path dir = fs::temp_directory_path() / "numscale-verify";
  fs::create_directories(dir);
  auto read = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  emit_csv(t, dir / "a.csv");
  emit_csv(t, dir / "b.csv");
  if (read(dir / "a.csv") != read(dir / "b.csv")) fail.record("CSV emission not deterministic");
  emit_svg(t, dir / "a.svg", "w", "distance");
  emit_svg(t, dir / "b.svg", "w", "distance");
  if (read(dir / "a.svg") != read(dir / "b.svg")) fail.record("SVG emission not deterministic");
  std::error_code ec;
  fs::remove_all(dir, ec);
  return {"cli/determinism", !fail.failed, fail.detail};
}

inline CheckResult check_cli_no_partial_files(std::mt19937_64&) {
  namespace fs = std::filesystem;
  detail::Failure fail;
  Table t;
  t.header = {"x", "y"};
  t.rows.push_back({1.0, 2.0});
  fs::path target = fs::temp_directory_path() / "numscale-verify-missing" / "out.csv";
  std::error_code ec;
  fs::remove_all(target.parent_path(), ec);
  bool threw = false;
  try {
    emit_csv(t, target);
  } catch (const IoError&) {
    threw = true;
  }
  if (!threw) fail.record("expected an I/O error for an unwritable target");
  if (fs::exists(target)) fail.record("partial file left behind");
  return {"cli/no_partial_files", !fail.failed, fail.detail};
}

// Registry ------------------------------------------------------------------

using CheckFn = CheckResult (*)(std::mt19937_64&);

struct Check {
  const char* name;
  CheckFn fn;
};

inline CheckResult check_verify_completeness(std::mt19937_64&);

inline const std::vector<Check>& registry() {
  static const std::vector<Check> checks = {
      {"scaled_numbers/field_axioms", &check_field_axioms},
      {"scaled_numbers/zero_invariance", &check_zero_invariance},
      {"scaled_numbers/unscaled_reduction", &check_unscaled_reduction},
      {"scaled_numbers/square_scaling", &check_square_scaling},
      {"scaled_numbers/transport_composition", &check_transport_composition},
      {"scaled_numbers/scaled_norm", &check_scaled_norm},
      {"scaling_fields/path_independence", &check_path_independence},
      {"scaling_fields/loop_triviality", &check_loop_triviality},
      {"scaling_fields/multiplicativity", &check_multiplicativity},
      {"scaling_fields/gradient_consistency", &check_gradient_consistency},
      {"scaling_fields/non_gradient_detection", &check_non_gradient_detection},
      {"geometry/external_factor_separability", &check_external_factor_separability},
      {"geometry/reparameterization_invariance", &check_reparameterization_invariance},
      {"geometry/additivity", &check_additivity},
      {"geometry/monotone_divergence", &check_monotone_divergence},
      {"geometry/quadrature_correctness", &check_quadrature_correctness},
      {"geodesics/analytic_gradient_check", &check_geodesic_gradient},
      {"geodesics/descent_monotone", &check_descent_monotone},
      {"geodesics/endpoint_pinning", &check_endpoint_pinning},
      {"geodesics/constant_theta_consistency", &check_constant_theta_consistency},
      {"geodesics/minimizer_optimality", &check_minimizer_optimality},
      {"geodesics/el_consistency", &check_el_consistency},
      {"holes/general_machinery_consistency", &check_hole_machinery_consistency},
      {"holes/black_white_duality", &check_black_white_duality},
      {"holes/monotonicity", &check_hole_monotonicity},
      {"holes/divergence", &check_hole_divergence},
      {"holes/speed_length_consistency", &check_speed_length_consistency},
      {"cosmology/factor_equality", &check_factor_equality},
      {"cosmology/equation_invariance_under_crush", &check_crush_equation_invariance},
      {"cosmology/boundary", &check_crush_boundary},
      {"cosmology/lightcone_consistency", &check_lightcone_consistency},
      {"scaled_dynamics/linearity", &check_dynamics_linearity},
      {"scaled_dynamics/reduction", &check_dynamics_reduction},
      {"scaled_dynamics/convergence_order", &check_dynamics_convergence_order},
      {"scaled_dynamics/action_variation_sanity", &check_action_variation_sanity},
      {"cli/determinism", &check_cli_determinism},
      {"cli/no_partial_files", &check_cli_no_partial_files},
      {"cli/verify_completeness", &check_verify_completeness},
  };
  return checks;
}

/// Every primary module must contribute at least one named suite, and the
/// registered names must be unique.
inline CheckResult check_verify_completeness(std::mt19937_64&) {
  detail::Failure fail;
  const std::vector<std::string> modules = {"scaled_numbers", "scaling_fields", "geometry",
                                            "geodesics",      "holes",          "cosmology",
                                            "scaled_dynamics", "cli"};
  for (const std::string& m : modules) {
    bool found = false;
    for (const Check& c : registry())
      if (std::string(c.name).rfind(m + "/", 0) == 0) found = true;
    if (!found) fail.record("module missing from the verify registry: " + m);
  }
  for (std::size_t i = 0; i < registry().size(); ++i)
    for (std::size_t j = i + 1; j < registry().size(); ++j)
      if (std::string(registry()[i].name) == registry()[j].name)
        fail.record("duplicate check name");
  return {"cli/verify_completeness", !fail.failed, fail.detail};
}

/// Runs every registered check with a per-check RNG derived from `seed`.
inline std::vector<CheckResult> run_all(std::uint64_t seed) {
  std::vector<CheckResult> results;
  std::uint64_t i = 0;
  for (const Check& c : registry()) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * ++i));
    try {
      results.push_back(c.fn(rng));
    } catch (const std::exception& e) {
      results.push_back({c.name, false, std::string("exception: ") + e.what()});
    }
  }
  return results;
}

}  // namespace numscale::verify
