// Acceptance suite: one test per headline numerical claim or invariant,
// each printing a PASS/FAIL line with the measured numbers.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "numscale/numscale.hpp"
#include "numscale/verify.hpp"

using namespace numscale;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846;

void report(int criterion, const char* name, bool pass, const std::string& detail) {
  std::printf("[ACCEPTANCE] %02d %-28s %s  %s\n", criterion, name, pass ? "PASS" : "FAIL",
              detail.c_str());
}

double midpoint_oracle(double K, double r, double w, long panels = 1000000) {
  double h = w / static_cast<double>(panels);
  double sum = 0.0;
  for (long i = 0; i < panels; ++i) {
    double z = (static_cast<double>(i) + 0.5) * h;
    sum += std::exp((K / r) * (1.0 / (1.0 - z) - 1.0));
  }
  return r * sum * h;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path work_dir() {
  fs::path d = fs::temp_directory_path() / "numscale-acceptance";
  fs::create_directories(d);
  return d;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(NUMSCALE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  return WEXITSTATUS(std::system(cmd.c_str()));
}

}  // namespace

// Headline claim: the white-hole scaled distance across the full radius
// is 0.4 of the unscaled distance at one decimal.
TEST(Acceptance, C01_WhiteHoleCompression) {
  double oracle = midpoint_oracle(-1.0, 1.0, 1.0);
  double got = hole_scaled_distance(HoleProfile(-1.0, 1.0), 1.0).value();
  bool match = std::abs(got - oracle) <= 1e-6 * std::abs(oracle);
  bool rounds = std::round(got * 10.0) / 10.0 == 0.4;
  std::ostringstream os;
  os << "value " << got << " oracle " << oracle;
  report(1, "white-hole compression", match && rounds, os.str());
  EXPECT_TRUE(match);
  EXPECT_TRUE(rounds);
}

// Headline claim: at 85% of the radius the black-hole scaled distance is
// about 12x the unscaled one.
TEST(Acceptance, C02_BlackHoleInflation) {
  double oracle = midpoint_oracle(1.0, 1.0, 0.85);
  double got = hole_scaled_distance(HoleProfile(1.0, 1.0), 0.85).value();
  bool match = std::abs(got - oracle) <= 1e-6 * std::abs(oracle);
  double ratio = got / 0.85;
  bool in_band = ratio >= 0.8 * 12.0 && ratio <= 1.2 * 12.0;
  std::ostringstream os;
  os << "value " << got << " oracle " << oracle << " ratio " << ratio;
  report(2, "black-hole inflation", match && in_band, os.str());
  EXPECT_TRUE(match);
  EXPECT_TRUE(in_band);
}

TEST(Acceptance, C03_Divergence) {
  HoleProfile black(1.0, 1.0);
  ScaledLengthResult near_center = hole_scaled_distance(black, 0.999);
  bool diverges = near_center.is_diverged() || near_center.value() > 1e6;
  bool monotone = true;
  double prev = -1.0;
  for (int i = 1; i <= 30; ++i) {
    double w = 0.96 * i / 30.0;
    double v = hole_scaled_distance(black, w).value();
    if (v <= prev) monotone = false;
    prev = v;
  }
  std::ostringstream os;
  os << (near_center.is_diverged() ? "DIVERGED at w=0.999" : "finite at w=0.999");
  report(3, "divergence at the center", diverges && monotone, os.str());
  EXPECT_TRUE(diverges);
  EXPECT_TRUE(monotone);
}

TEST(Acceptance, C04_ScaledFieldAxioms) {
  std::mt19937_64 rng(42);
  auto axioms = verify::check_field_axioms(rng);
  auto reduction = verify::check_unscaled_reduction(rng);
  report(4, "scaled-field axioms", axioms.pass && reduction.pass,
         axioms.pass ? "10^4 cases per axiom at rel 1e-12" : axioms.detail + reduction.detail);
  EXPECT_TRUE(axioms.pass) << axioms.detail;
  EXPECT_TRUE(reduction.pass) << reduction.detail;
}

TEST(Acceptance, C05_EquationInvariance) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> expo(-6.0, 6.0);
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    ScaledReal s(std::pow(10.0, expo(rng)));
    double c = std::pow(10.0, expo(rng));
    double g = std::pow(10.0, expo(rng));
    if (!check_equation_invariance(c, g, s)) ++failures;
  }
  std::ostringstream os;
  os << failures << " failures in 10^4 triples";
  report(5, "equation invariance", failures == 0, os.str());
  EXPECT_EQ(failures, 0);
}

TEST(Acceptance, C06_PathIndependenceAndLoops) {
  std::mt19937_64 rng(42);
  auto paths = verify::check_path_independence(rng);
  auto loops = verify::check_loop_triviality(rng);
  double loop_factor =
      scale_factor_path(rotational_vector_field(1.0),
                        Path::circle_arc(Point{0.0, 0.0}, 1.0, 0.0, 2.0 * kPi));
  bool rotational = std::abs(loop_factor - std::exp(kPi)) <= 1e-6 * std::exp(kPi);
  std::ostringstream os;
  os << "rotational loop " << loop_factor << " vs e^pi " << std::exp(kPi);
  report(6, "path independence & loops", paths.pass && loops.pass && rotational, os.str());
  EXPECT_TRUE(paths.pass) << paths.detail;
  EXPECT_TRUE(loops.pass) << loops.detail;
  EXPECT_TRUE(rotational);
}

TEST(Acceptance, C07_ReferencePointChange) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0, failures = 0;
  while (checked < 100) {
    ScalarField f = linear_field(0.5 + std::abs(u(rng)), Vec{u(rng) + 1.5, u(rng)});
    Point a{u(rng), u(rng)}, b{u(rng) + 1.2, u(rng)}, z{u(rng), u(rng)};
    if (distance(a, b) < 1e-3) continue;
    ++checked;
    Path p = Path::polyline({a, Point{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]) + 0.3 * u(rng)}, b});
    double at_a = path_length_scaled(p, f, a).value();
    double at_z = path_length_scaled(p, f, z).value();
    if (std::abs(reference_change(at_a, f, a, z) - at_z) > 1e-12 * std::abs(at_z)) ++failures;
  }
  std::ostringstream os;
  os << failures << " failures in 100 random fields/paths";
  report(7, "reference-point change", failures == 0, os.str());
  EXPECT_EQ(failures, 0);
}

TEST(Acceptance, C08_GeodesicReduction) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  ScalarField flat = constant_field(0.9);
  int failures = 0;
  double worst_dev = 0.0;
  for (int i = 0; i < 100; ++i) {
    Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
    if (distance(a, b) < 1e-2) {
      --i;
      continue;
    }
    DiscretePath p = minimize_scaled_length(a, b, flat);
    Vec dir = (b - a).normalized();
    for (const Point& q : p.nodes()) {
      Vec off = q - a;
      off -= off.dot(dir) * dir;
      worst_dev = std::max(worst_dev, off.norm());
    }
    double d = discrete_scaled_length(p, flat, a);
    if (std::abs(d - distance(a, b)) > 1e-8 * distance(a, b)) ++failures;
  }
  auto grad_check = verify::check_geodesic_gradient(rng);
  bool pass = failures == 0 && worst_dev < 1e-6 && grad_check.pass;
  std::ostringstream os;
  os << failures << " distance failures, max node deviation " << worst_dev;
  report(8, "geodesic reduction", pass, os.str());
  EXPECT_EQ(failures, 0);
  EXPECT_LT(worst_dev, 1e-6);
  EXPECT_TRUE(grad_check.pass) << grad_check.detail;
}

TEST(Acceptance, C09_EulerLagrangeDiagnostic) {
  // straight chord, constant field: the residual vanishes
  DiscretePath chord = DiscretePath::chord(Point{0.0, 0.0}, Point{2.0, 1.0}, 64);
  double worst = 0.0;
  for (const Vec& r : el_residual(chord, constant_field(0.5)))
    worst = std::max(worst, r.norm());
  bool vanishes = worst <= 1e-10;

  // converged minimizer on a smooth field: residual decreases under doubling
  ScalarField f = linear_field(1.0, Vec{0.0, 1.0});
  auto max_residual = [&](int segments) {
    OptimizerOptions opts;
    opts.nodes = segments;
    opts.gradient_tolerance = 1e-7;
    opts.max_iterations = 100000;
    DiscretePath p = minimize_scaled_length(Point{0.0, 0.0}, Point{1.0, 0.0}, f, opts);
    double m = 0.0;
    for (const Vec& r : el_residual(p, f)) m = std::max(m, r.norm());
    return m;
  };
  double coarse = max_residual(16);
  double fine = max_residual(32);
  bool decreases = fine < coarse;
  std::ostringstream os;
  os << "chord residual " << worst << ", refinement " << coarse << " -> " << fine;
  report(9, "Euler-Lagrange diagnostic", vanishes && decreases, os.str());
  EXPECT_TRUE(vanishes);
  EXPECT_TRUE(decreases);
}

TEST(Acceptance, C10_CosmologicalCrush) {
  CrushProfile p(2.0, 14e9);
  bool unit = crush_factor(p, p.t_now) == 1.0;
  double f3 = crush_factor(p, p.t_now * 1e-3);
  bool millionth = std::abs(f3 - 1e-6) <= 1e-12 * 1e-6;
  std::vector<std::pair<std::string, double>> q = {
      {"wavelength", 5e-7}, {"frequency", 6e14}, {"speed", 3e8}};
  auto scaled = uniform_scaling_check(p, p.t_now / 2.0, q);
  double ratio0 = scaled[0].second / q[0].second;
  bool common = true;
  for (std::size_t i = 1; i < q.size(); ++i)
    if (std::abs(scaled[i].second / q[i].second - ratio0) > 1e-15 * ratio0) common = false;
  std::ostringstream os;
  os << "factor(t_now)=" << crush_factor(p, p.t_now) << ", factor(1e-3 t_now)=" << f3;
  report(10, "cosmological crush", unit && millionth && common, os.str());
  EXPECT_TRUE(unit);
  EXPECT_TRUE(millionth);
  EXPECT_TRUE(common);
}

TEST(Acceptance, C11_DynamicsReductions) {
  double m = 1.5, v = 0.8, T = 3.0;
  Path straight = Path::segment(Point{0.0}, Point{v * T});
  double action = scaled_action(straight, LagrangianSpec::free_particle(m),
                                constant_field(0.0), Point{0.0}, 0.0, T);
  double closed = 0.5 * m * v * v * T;
  bool action_ok = std::abs(action - closed) <= 1e-8 * std::abs(closed);

  std::mt19937_64 rng(42);
  auto order = verify::check_dynamics_convergence_order(rng);
  std::ostringstream os;
  os << "free action " << action << " vs " << closed << "; " << order.detail;
  report(11, "dynamics reductions", action_ok && order.pass, os.str());
  EXPECT_TRUE(action_ok);
  EXPECT_TRUE(order.pass) << order.detail;
}

TEST(Acceptance, C12_DeterminismAndGoldenFiles) {
  fs::path dir = work_dir();
  fs::path b1 = dir / "b1.csv", b2 = dir / "b2.csv", w1 = dir / "w1.csv";
  fs::path s1 = dir / "b1.svg", s2 = dir / "b2.svg";
  std::string black_args = "holes --kind black --K 1 --r 1 --samples 200";
  std::string white_args = "holes --kind white --K 1 --r 1 --samples 200";
  bool runs_ok = run_cli(black_args + " --out " + b1.string() + " --svg " + s1.string()) == 0 &&
                 run_cli(black_args + " --out " + b2.string() + " --svg " + s2.string()) == 0 &&
                 run_cli(white_args + " --out " + w1.string()) == 0;
  bool identical = slurp(b1) == slurp(b2) && slurp(s1) == slurp(s2) && !slurp(b1).empty();

  fs::path golden_dir(NUMSCALE_GOLDEN_DIR);
  std::string golden_black = slurp(golden_dir / "holes_black.csv");
  std::string golden_white = slurp(golden_dir / "holes_white.csv");
  bool golden_ok = !golden_black.empty() && golden_black == slurp(b1) &&
                   !golden_white.empty() && golden_white == slurp(w1);
  std::ostringstream os;
  os << (identical ? "byte-identical reruns" : "rerun mismatch") << ", golden "
     << (golden_ok ? "match" : "MISMATCH");
  report(12, "determinism & golden files", runs_ok && identical && golden_ok, os.str());
  EXPECT_TRUE(runs_ok);
  EXPECT_TRUE(identical);
  EXPECT_TRUE(golden_ok);
}
