#include "numscale/table.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "numscale/holes.hpp"

using namespace numscale;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path temp_dir() {
  fs::path d = fs::temp_directory_path() / "numscale-emit-tests";
  fs::create_directories(d);
  return d;
}

// Pull the y pixel coordinates out of an SVG polyline points attribute.
std::vector<std::vector<double>> polyline_ys(const std::string& svg) {
  std::vector<std::vector<double>> out;
  std::size_t pos = 0;
  while ((pos = svg.find("points=\"", pos)) != std::string::npos) {
    pos += 8;
    std::size_t end = svg.find('"', pos);
    std::stringstream ss(svg.substr(pos, end - pos));
    std::vector<double> ys;
    std::string pair;
    while (ss >> pair) {
      std::size_t comma = pair.find(',');
      ys.push_back(std::stod(pair.substr(comma + 1)));
    }
    out.push_back(std::move(ys));
    pos = end;
  }
  return out;
}

}  // namespace

TEST(EmitCsv, FormatContract) {
  Table t;
  t.header = {"w", "unscaled", "scaled"};
  t.rows.push_back({0.25, 1.0, 2.0});
  t.rows.push_back({0.5, 3.0, kDiverged});
  fs::path p = temp_dir() / "format.csv";
  emit_csv(t, p);
  std::string text = slurp(p);
  EXPECT_EQ(text, "w,unscaled,scaled\n0.25,1,2\n0.5,3,DIVERGED\n");
  for (unsigned char c : text) EXPECT_LT(c, 128u);  // 7-bit ASCII
}

TEST(EmitCsv, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.25), "0.25");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(0.1), "0.1");
  double third = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(third)), third);  // round-trips exactly
}

TEST(EmitCsv, Deterministic) {
  Table t;
  t.header = {"a", "b"};
  for (int i = 0; i < 20; ++i) t.rows.push_back({i * 0.1, std::exp(i * 0.1)});
  fs::path p1 = temp_dir() / "d1.csv", p2 = temp_dir() / "d2.csv";
  emit_csv(t, p1);
  emit_csv(t, p2);
  EXPECT_EQ(slurp(p1), slurp(p2));
}

TEST(EmitCsv, NoPartialFileOnFailure) {
  Table t;
  t.header = {"x"};
  t.rows.push_back({1.0});
  fs::path missing = temp_dir() / "no-such-dir" / "out.csv";
  fs::remove_all(missing.parent_path());
  EXPECT_THROW(emit_csv(t, missing), IoError);
  EXPECT_FALSE(fs::exists(missing));
}

TEST(EmitSvg, BlackHoleCurveGeometry) {
  Table t;
  t.header = {"w", "unscaled", "scaled"};
  for (const HoleCurveRow& row : hole_curve(HoleProfile(1.0, 1.0), 40)) {
    t.rows.push_back({row.w, row.unscaled,
                      row.scaled.is_diverged() ? kDiverged : TableCell(row.scaled.value())});
  }
  fs::path p = temp_dir() / "black.svg";
  emit_svg(t, p, "w", "distance");
  std::string svg = slurp(p);
  auto lines = polyline_ys(svg);
  ASSERT_EQ(lines.size(), 2u);  // one polyline per ordinate column
  const auto& unscaled = lines[0];
  const auto& scaled = lines[1];
  // diverged rows are omitted from the scaled polyline
  EXPECT_LT(scaled.size(), unscaled.size());
  // pixel y grows downward: the scaled curve lies strictly above for w > 0
  for (std::size_t i = 1; i < scaled.size(); ++i) EXPECT_LT(scaled[i], unscaled[i]);
}

TEST(EmitSvg, RejectsTablesWithoutOrdinates) {
  Table t;
  t.header = {"only_abscissa"};
  t.rows.push_back({1.0});
  EXPECT_THROW(emit_svg(t, temp_dir() / "bad.svg", "x", "y"), InvalidParameter);
}

TEST(EmitSvg, Deterministic) {
  Table t;
  t.header = {"x", "y"};
  for (int i = 0; i < 10; ++i) t.rows.push_back({0.1 * i, std::sin(0.1 * i)});
  fs::path p1 = temp_dir() / "s1.svg", p2 = temp_dir() / "s2.svg";
  emit_svg(t, p1, "x", "y");
  emit_svg(t, p2, "x", "y");
  EXPECT_EQ(slurp(p1), slurp(p2));
}
