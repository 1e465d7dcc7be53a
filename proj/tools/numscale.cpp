// Command-line front end: deterministic CSV tables and optional SVG line
// charts for scaling-hole curves, scaled geodesics, cosmological crush
// curves, and the library verification suite.
//
// Exit codes: 0 success, 1 computation or I/O failure, 2 argument errors.

#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "numscale/numscale.hpp"
#include "numscale/verify.hpp"

namespace {

using namespace numscale;

Point parse_point(const std::string& text) {
  std::vector<double> coords;
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ',')) {
    size_t pos = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &pos);
    } catch (const std::logic_error&) {
      pos = 0;
    }
    if (pos != token.size() || token.empty())
      throw InvalidParameter("malformed coordinate: " + token);
    coords.push_back(value);
  }
  if (coords.empty() || coords.size() > 4)
    throw InvalidParameter("points need 1 to 4 comma-separated coordinates");
  Point p(static_cast<int>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) p[static_cast<int>(i)] = coords[i];
  return p;
}

struct FieldFlags {
  std::string field = "constant";
  double K = 1.0;
  std::string center = "0,0";
  double alpha = 2.0;
  double t_now = 14e9;
  double kappa = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--field", field, "Scaling field: constant|radial|cosmo|linear")
        ->check(CLI::IsMember({"constant", "radial", "cosmo", "linear"}));
    cmd->add_option("--K", K, "Radial field strength (length units)");
    cmd->add_option("--center", center, "Radial field center, e.g. 0,0");
    cmd->add_option("--alpha", alpha, "Cosmological exponent");
    cmd->add_option("--t-now", t_now, "Present cosmological time (> 0)");
    cmd->add_option("--kappa", kappa, "Linear field slope (direction: first axis)");
  }

  ScalarField build(int dim) const {
    if (field == "constant") return constant_field(0.0);
    if (field == "radial") {
      Point c = parse_point(center);
      if (c.dim() != dim)
        throw InvalidParameter("--center dimension does not match the endpoints");
      return radial_field(K, c);
    }
    if (field == "cosmo") return cosmological_field(alpha, t_now);
    return linear_field(kappa, Vec::axis(dim, 0));
  }
};

Table hole_table(const std::vector<HoleCurveRow>& rows) {
  Table t;
  t.header = {"w", "unscaled", "scaled"};
  for (const HoleCurveRow& r : rows)
    t.rows.push_back({r.w, r.unscaled,
                      r.scaled.is_diverged() ? kDiverged : TableCell(r.scaled.value())});
  return t;
}

int run_holes(const std::string& kind, double K, double r, int samples,
              const std::string& out, const std::string& svg) {
  double signed_K = kind == "white" ? -std::abs(K) : std::abs(K);
  HoleProfile prof(signed_K, r);
  Table t = hole_table(hole_curve(prof, samples));
  emit_csv(t, out);
  if (!svg.empty()) emit_svg(t, svg, "w", "distance");
  return 0;
}

int run_geodesic(const FieldFlags& flags, const std::string& from, const std::string& to,
                 int nodes, int max_iter, double grad_tol, const std::string& out,
                 const std::string& history, const std::string& svg) {
  Point a = parse_point(from);
  Point b = parse_point(to);
  if (a.dim() != b.dim()) throw InvalidParameter("--from and --to dimensions differ");
  if (!svg.empty() && a.dim() < 2) throw InvalidParameter("--svg needs at least 2-D endpoints");
  ScalarField f = flags.build(a.dim());

  OptimizerOptions opts;
  opts.nodes = nodes;
  opts.max_iterations = max_iter;
  opts.gradient_tolerance = grad_tol;
  if (flags.field == "radial") {
    Point c = parse_point(flags.center);
    opts.singular_center = c;
    // keep-out ball scaled by the reference radius (start point to center)
    opts.singular_radius = 1e-3 * distance(a, c);
  }

  MinimizeResult res = minimize_scaled_length_traced(a, b, f, opts);
  double dist = discrete_scaled_length(res.path, f, a);
  std::fprintf(stderr, "scaled distance %s after %d iterations (gradient %s)\n",
               format_double(dist).c_str(), res.iterations,
               format_double(res.gradient_norm).c_str());

  Table t;
  t.header = {"s"};
  for (int i = 0; i < a.dim(); ++i) t.header.push_back("x" + std::to_string(i + 1));
  const auto& pts = res.path.nodes();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    std::vector<TableCell> row{static_cast<double>(k) / res.path.segments()};
    for (int i = 0; i < a.dim(); ++i) row.push_back(pts[k][i]);
    t.rows.push_back(std::move(row));
  }
  emit_csv(t, out);

  if (!history.empty()) {
    Table h;
    h.header = {"iteration", "objective"};
    for (std::size_t i = 0; i < res.objective_history.size(); ++i)
      h.rows.push_back({static_cast<double>(i), res.objective_history[i]});
    emit_csv(h, history);
  }
  if (!svg.empty()) {
    Table plot;
    plot.header = {"x1", "x2"};
    for (const Point& p : pts) plot.rows.push_back({p[0], p[1]});
    emit_svg(plot, svg, "x1", "x2");
  }
  return 0;
}

int run_cosmo(double alpha, double t_now, double c, int samples, const std::string& out,
              const std::string& svg) {
  CrushProfile prof(alpha, t_now, c);
  Table t;
  t.header = {"s", "lookback_distance", "factor"};
  for (const CrushRow& r : crush_curve(prof, samples))
    t.rows.push_back({r.s, r.lookback_distance, r.factor});
  emit_csv(t, out);
  if (!svg.empty()) {
    Table plot;
    plot.header = {"s", "factor"};
    for (const auto& row : t.rows) plot.rows.push_back({row[0], row[2]});
    emit_svg(plot, svg, "s", "factor");
  }
  return 0;
}

int run_verify(std::uint64_t seed) {
  auto results = numscale::verify::run_all(seed);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s %s%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.empty() ? "" : ": ", r.detail.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%zu suites, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numscale: space-time dependent number scaling toolkit"};
  app.require_subcommand(1);

  // holes
  auto* holes_cmd = app.add_subcommand("holes", "Black/white scaling-hole distance curves");
  std::string hole_kind = "black";
  double hole_K = 1.0, hole_r = 1.0;
  int hole_samples = 200;
  std::string hole_out, hole_svg;
  holes_cmd->add_option("--kind", hole_kind, "black or white")
      ->check(CLI::IsMember({"black", "white"}));
  holes_cmd->add_option("--K", hole_K, "Scaling strength magnitude");
  holes_cmd->add_option("--r", hole_r, "Reference radius")->check(CLI::PositiveNumber);
  holes_cmd->add_option("--samples", hole_samples, "Curve samples (>= 2)");
  holes_cmd->add_option("--out", hole_out, "Output CSV path")->required();
  holes_cmd->add_option("--svg", hole_svg, "Optional SVG chart path");

  // geodesic
  auto* geo_cmd = app.add_subcommand("geodesic", "Scaled distance by variational descent");
  FieldFlags geo_field;
  geo_field.attach(geo_cmd);
  std::string geo_from = "0,0", geo_to = "1,0";
  int geo_nodes = 64, geo_max_iter = 10000;
  double geo_tol = 1e-9;
  std::string geo_out, geo_history, geo_svg;
  geo_cmd->add_option("--from", geo_from, "Start point, e.g. -1,0.5")->required();
  geo_cmd->add_option("--to", geo_to, "End point")->required();
  geo_cmd->add_option("--nodes", geo_nodes, "Path segments (>= 4)");
  geo_cmd->add_option("--max-iter", geo_max_iter, "Iteration cap");
  geo_cmd->add_option("--grad-tol", geo_tol, "Gradient tolerance");
  geo_cmd->add_option("--out", geo_out, "Node list CSV path")->required();
  geo_cmd->add_option("--history", geo_history, "Per-iteration objective CSV path");
  geo_cmd->add_option("--svg", geo_svg, "Optional SVG chart of the path");

  // cosmo
  auto* cosmo_cmd = app.add_subcommand("cosmo", "Cosmological crush-factor curve");
  double cosmo_alpha = 2.0, cosmo_t_now = 14e9, cosmo_c = 1.0;
  int cosmo_samples = 200;
  std::string cosmo_out, cosmo_svg;
  cosmo_cmd->add_option("--alpha", cosmo_alpha,
                        "Exponent of the (s/t_now)^alpha factor family");
  cosmo_cmd->add_option("--t-now", cosmo_t_now, "Present time")->check(CLI::PositiveNumber);
  cosmo_cmd->add_option("--c", cosmo_c, "Signal speed")->check(CLI::PositiveNumber);
  cosmo_cmd->add_option("--samples", cosmo_samples, "Curve samples (>= 2)");
  cosmo_cmd->add_option("--out", cosmo_out, "Output CSV path")->required();
  cosmo_cmd->add_option("--svg", cosmo_svg, "Optional SVG chart path");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run all property suites");
  std::uint64_t verify_seed = 42;
  verify_cmd->add_option("--seed", verify_seed, "RNG seed for randomized suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*holes_cmd) return run_holes(hole_kind, hole_K, hole_r, hole_samples, hole_out, hole_svg);
    if (*geo_cmd)
      return run_geodesic(geo_field, geo_from, geo_to, geo_nodes, geo_max_iter, geo_tol, geo_out,
                          geo_history, geo_svg);
    if (*cosmo_cmd)
      return run_cosmo(cosmo_alpha, cosmo_t_now, cosmo_c, cosmo_samples, cosmo_out, cosmo_svg);
    if (*verify_cmd) return run_verify(verify_seed);
  } catch (const InvalidParameter& e) {
    std::fprintf(stderr, "error: %s\nrun with --help for usage\n", e.what());
    return 2;
  } catch (const DimensionError& e) {
    std::fprintf(stderr, "error: %s\nrun with --help for usage\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
