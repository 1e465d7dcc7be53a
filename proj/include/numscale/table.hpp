#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include "numscale/core.hpp"

namespace numscale {

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A cell is a finite value or the DIVERGED marker.
using TableCell = std::optional<double>;

inline constexpr TableCell kDiverged = std::nullopt;

/// Rectangular table with a header row. Column 0 is the abscissa for plots.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<TableCell>> rows;

  int columns() const { return static_cast<int>(header.size()); }
};

/// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline void write_file_atomic(const std::filesystem::path& target, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ec2;
    fs::remove(tmp, ec2);
    throw IoError("rename failed: " + target.string());
  }
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

/// Writes the table as CSV: comma-joined header and rows, one '\n' per line,
/// 7-bit ASCII, shortest round-trip float rendering, DIVERGED for divergent
/// cells. The file appears atomically (temp file then rename).
inline void emit_csv(const Table& table, const std::filesystem::path& path) {
  require(!table.header.empty(), "emit_csv: table must have a header");
  std::string out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c) out += ',';
    out += table.header[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    require(row.size() == table.header.size(), "emit_csv: ragged row");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c] ? format_double(*row[c]) : "DIVERGED";
    }
    out += '\n';
  }
  detail::write_file_atomic(path, out);
}

/// Minimal standalone SVG line chart: column 0 on the x axis, one polyline
/// per remaining column, axis lines, axis labels, and range tick labels.
/// Rows whose cell is DIVERGED are omitted from that polyline. Output is a
/// deterministic function of the inputs.
inline void emit_svg(const Table& table, const std::filesystem::path& path,
                     const std::string& x_label, const std::string& y_label) {
  if (table.columns() < 2) throw InvalidParameter("emit_svg: need at least one ordinate column");
  constexpr double kWidth = 800.0, kHeight = 600.0;
  constexpr double kLeft = 70.0, kRight = 20.0, kTop = 20.0, kBottom = 50.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  bool have_x = false, have_y = false;
  for (const auto& row : table.rows) {
    require(row.size() == table.header.size(), "emit_svg: ragged row");
    if (row[0]) {
      double x = *row[0];
      xmin = have_x ? std::min(xmin, x) : x;
      xmax = have_x ? std::max(xmax, x) : x;
      have_x = true;
    }
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (!row[0] || !row[c]) continue;
      double y = *row[c];
      ymin = have_y ? std::min(ymin, y) : y;
      ymax = have_y ? std::max(ymax, y) : y;
      have_y = true;
    }
  }
  if (!have_x || !have_y) throw InvalidParameter("emit_svg: no plottable data");
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
  auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * plot_h; };

  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf"};
  constexpr int kPaletteSize = 7;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
       "viewBox=\"0 0 800 600\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  // axes
  s += "<line x1=\"" + format_double(kLeft) + "\" y1=\"" + format_double(kTop) + "\" x2=\"" +
       format_double(kLeft) + "\" y2=\"" + format_double(kHeight - kBottom) +
       "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + format_double(kLeft) + "\" y1=\"" + format_double(kHeight - kBottom) +
       "\" x2=\"" + format_double(kWidth - kRight) + "\" y2=\"" +
       format_double(kHeight - kBottom) + "\" stroke=\"black\"/>\n";
  // range ticks
  s += "<text x=\"" + format_double(kLeft) + "\" y=\"580\" font-size=\"12\">" +
       format_double(xmin) + "</text>\n";
  s += "<text x=\"" + format_double(kWidth - kRight - 60.0) + "\" y=\"580\" font-size=\"12\">" +
       format_double(xmax) + "</text>\n";
  s += "<text x=\"4\" y=\"" + format_double(kHeight - kBottom) + "\" font-size=\"12\">" +
       format_double(ymin) + "</text>\n";
  s += "<text x=\"4\" y=\"" + format_double(kTop + 12.0) + "\" font-size=\"12\">" +
       format_double(ymax) + "</text>\n";
  // axis labels
  s += "<text x=\"" + format_double(kLeft + plot_w / 2.0) +
       "\" y=\"595\" font-size=\"14\" text-anchor=\"middle\">" + detail::xml_escape(x_label) +
       "</text>\n";
  s += "<text x=\"8\" y=\"14\" font-size=\"14\">" + detail::xml_escape(y_label) + "</text>\n";

  for (int c = 1; c < table.columns(); ++c) {
    std::string pts;
    for (const auto& row : table.rows) {
      if (!row[0] || !row[static_cast<std::size_t>(c)]) continue;
      if (!pts.empty()) pts += ' ';
      pts += format_double(px(*row[0]));
      pts += ',';
      pts += format_double(py(*row[static_cast<std::size_t>(c)]));
    }
    const char* color = kPalette[(c - 1) % kPaletteSize];
    s += "<polyline fill=\"none\" stroke=\"";
    s += color;
    s += "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    // legend entry
    double ly = kTop + 16.0 * c;
    s += "<line x1=\"" + format_double(kWidth - kRight - 120.0) + "\" y1=\"" +
         format_double(ly) + "\" x2=\"" + format_double(kWidth - kRight - 100.0) + "\" y2=\"" +
         format_double(ly) + "\" stroke=\"";
    s += color;
    s += "\" stroke-width=\"1.5\"/>\n";
    s += "<text x=\"" + format_double(kWidth - kRight - 94.0) + "\" y=\"" +
         format_double(ly + 4.0) + "\" font-size=\"12\">" +
         detail::xml_escape(table.header[static_cast<std::size_t>(c)]) + "</text>\n";
  }
  s += "</svg>\n";
  detail::write_file_atomic(path, s);
}

}  // namespace numscale
