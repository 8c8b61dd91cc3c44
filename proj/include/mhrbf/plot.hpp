#pragma once

#include <string>
#include <vector>

#include "mhrbf/csv.hpp"

namespace mhrbf {

enum class PlotKind { Lines, Contour };

struct PlotSpec {
  PlotKind kind = PlotKind::Lines;
  std::string x = "eps";
  std::string y = "err_f";
  std::string z = "err_f";                 ///< contour only; coloured by log10(z)
  std::vector<std::string> series{"method"};  ///< lines are grouped by these columns
  bool log_x = true;
  bool log_y = true;
  std::string title;
  int width = 720;
  int height = 480;
};

/// Sensible plot for a record CSV written by the named experiment:
///   sweep-eps-n     contour of err_f over (eps, n)
///   poly-compare    err_f vs eps, one line per (method, l)
///   method-compare  err_f vs eps, one line per method
///   radius-scaling  err_f vs radius, one line per method
///   cost-study      min-over-l err_f vs unknowns, one line per (method, eps, radius)
PlotSpec default_plot_spec(const std::string& experiment);

/// Renders the table to a standalone SVG document. Rows whose coordinates are
/// non-finite (or non-positive on a log axis) are dropped; several rows at the
/// same x within a series keep the smallest y. Throws InputError when nothing
/// is left to draw, ParseError on non-numeric cells.
std::string render_svg(const CsvTable& table, const PlotSpec& spec);

/// Reads `csv_path`, renders, and writes `svg_path`. No file is written on error.
void emit_plot(const std::string& csv_path, const PlotSpec& spec, const std::string& svg_path);

}  // namespace mhrbf
