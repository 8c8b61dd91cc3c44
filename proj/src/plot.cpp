#include "mhrbf/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "mhrbf/point.hpp"

namespace mhrbf {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

// Plot-area margins.
constexpr double kLeft = 80, kRight = 190, kTop = 40, kBottom = 60;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string axis_label(const std::string& column, bool log) {
  std::string name = column == "eps" ? "\xCE\xB5" : column;  // UTF-8 epsilon
  return log ? name + " (log)" : name;
}

// Cell value for a plot coordinate; "none" and friends are not plottable.
bool cell_value(const std::string& field, int line, double& out) {
  if (field == "none" || field == "-") return false;
  out = parse_double(field, line);
  return std::isfinite(out);
}

struct Axis {
  double lo = 0, hi = 1;  // in transformed units
  bool log = false;
  double pix0 = 0, pix1 = 1;

  double tr(double v) const { return log ? std::log10(v) : v; }
  double map(double v) const { return pix0 + (tr(v) - lo) / (hi - lo) * (pix1 - pix0); }
  double map_t(double t) const { return pix0 + (t - lo) / (hi - lo) * (pix1 - pix0); }
};

void fit_axis(Axis& a, double tmin, double tmax) {
  if (a.log) {
    a.lo = std::floor(tmin);
    a.hi = std::ceil(tmax);
  } else {
    a.lo = tmin;
    a.hi = tmax;
  }
  if (a.hi - a.lo < 1e-12) {
    a.lo -= a.log ? 1 : 0.5;
    a.hi += a.log ? 1 : 0.5;
  }
}

// Tick positions in transformed units.
std::vector<double> ticks(const Axis& a) {
  std::vector<double> out;
  if (a.log) {
    const int span = static_cast<int>(std::lround(a.hi - a.lo));
    const int step = std::max(1, (span + 7) / 8);
    for (int e = static_cast<int>(std::lround(a.lo)); e <= std::lround(a.hi); e += step)
      out.push_back(e);
    return out;
  }
  const double raw = (a.hi - a.lo) / 6;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  for (double t = std::ceil(a.lo / step - 1e-9) * step; t <= a.hi + 1e-9 * step; t += step)
    out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  return out;
}

std::string tick_text(double t, bool log) {
  if (log) return "1e" + std::to_string(static_cast<int>(std::lround(t)));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

void draw_frame(std::ostringstream& os, const PlotSpec& spec, const Axis& ax, const Axis& ay,
                const std::string& xlabel, const std::string& ylabel) {
  const double x0 = kLeft, x1 = spec.width - kRight, y0 = spec.height - kBottom, y1 = kTop;
  os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y1) << "\" width=\"" << num(x1 - x0)
     << "\" height=\"" << num(y0 - y1) << "\" fill=\"none\" stroke=\"#000\"/>\n";
  for (double t : ticks(ax)) {
    const double px = ax.map_t(t);
    os << "<line x1=\"" << num(px) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(px)
       << "\" y2=\"" << num(y0 + 5) << "\" stroke=\"#000\"/>\n"
       << "<text x=\"" << num(px) << "\" y=\"" << num(y0 + 20)
       << "\" text-anchor=\"middle\" font-size=\"12\">" << tick_text(t, ax.log) << "</text>\n";
  }
  for (double t : ticks(ay)) {
    const double py = ay.map_t(t);
    os << "<line x1=\"" << num(x0 - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(x0)
       << "\" y2=\"" << num(py) << "\" stroke=\"#000\"/>\n"
       << "<text x=\"" << num(x0 - 8) << "\" y=\"" << num(py + 4)
       << "\" text-anchor=\"end\" font-size=\"12\">" << tick_text(t, ay.log) << "</text>\n";
  }
  os << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(spec.height - 15.0)
     << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(xlabel) << "</text>\n"
     << "<text x=\"18\" y=\"" << num((y0 + y1) / 2) << "\" text-anchor=\"middle\" font-size=\"14\""
     << " transform=\"rotate(-90 18 " << num((y0 + y1) / 2) << ")\">" << escape(ylabel)
     << "</text>\n";
  if (!spec.title.empty())
    os << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
       << escape(spec.title) << "</text>\n";
}

std::string header(const PlotSpec& spec) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
     << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height
     << "\" font-family=\"sans-serif\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
  return os.str();
}

std::string render_lines(const CsvTable& t, const PlotSpec& spec) {
  const std::size_t cx = t.column(spec.x), cy = t.column(spec.y);
  std::vector<std::size_t> cs;
  for (const auto& s : spec.series) cs.push_back(t.column(s));

  std::map<std::string, std::map<double, double>> series;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    double x, y;
    if (!cell_value(row[cx], t.row_lines[i], x) || !cell_value(row[cy], t.row_lines[i], y)) continue;
    if ((spec.log_x && x <= 0) || (spec.log_y && y <= 0)) continue;
    std::string key;
    for (std::size_t k = 0; k < cs.size(); ++k)
      key += (k ? ", " : "") + spec.series[k] + "=" + row[cs[k]];
    auto& s = series[key];
    auto it = s.find(x);
    if (it == s.end() || y < it->second) s[x] = y;
  }
  if (series.empty()) throw InputError("nothing to plot: no finite (" + spec.x + ", " + spec.y + ") rows");

  Axis ax{.log = spec.log_x}, ay{.log = spec.log_y};
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& [_, s] : series)
    for (const auto& [x, y] : s) {
      xmin = std::min(xmin, ax.tr(x));
      xmax = std::max(xmax, ax.tr(x));
      ymin = std::min(ymin, ay.tr(y));
      ymax = std::max(ymax, ay.tr(y));
    }
  fit_axis(ax, xmin, xmax);
  fit_axis(ay, ymin, ymax);
  ax.pix0 = kLeft;
  ax.pix1 = spec.width - kRight;
  ay.pix0 = spec.height - kBottom;
  ay.pix1 = kTop;

  std::ostringstream os;
  os << header(spec);
  draw_frame(os, spec, ax, ay, axis_label(spec.x, spec.log_x), axis_label(spec.y, spec.log_y));
  std::size_t idx = 0;
  for (const auto& [key, s] : series) {
    const char* colour = kPalette[idx % std::size(kPalette)];
    if (s.size() == 1) {
      const auto& [x, y] = *s.begin();
      os << "<circle cx=\"" << num(ax.map(x)) << "\" cy=\"" << num(ay.map(y))
         << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
    } else {
      os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
      bool first = true;
      for (const auto& [x, y] : s) {
        os << (first ? "" : " ") << num(ax.map(x)) << ',' << num(ay.map(y));
        first = false;
      }
      os << "\"/>\n";
    }
    const double ly = kTop + 10 + 18.0 * static_cast<double>(idx);
    const double lx = spec.width - kRight + 12;
    os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 20)
       << "\" y2=\"" << num(ly) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << num(lx + 25) << "\" y=\"" << num(ly + 4) << "\" font-size=\"11\">"
       << escape(key) << "</text>\n";
    ++idx;
  }
  os << "</svg>\n";
  return os.str();
}

// Cell edges halfway between neighbouring (transformed) grid values.
std::vector<double> edges(const std::vector<double>& v) {
  std::vector<double> e(v.size() + 1);
  if (v.size() == 1) return {v[0] - 0.5, v[0] + 0.5};
  for (std::size_t i = 1; i < v.size(); ++i) e[i] = 0.5 * (v[i - 1] + v[i]);
  e.front() = v.front() - (e[1] - v.front());
  e.back() = v.back() + (v.back() - e[v.size() - 1]);
  return e;
}

// Blue (small) to yellow (large).
std::string ramp(double u) {
  u = std::clamp(u, 0.0, 1.0);
  const double stops[][3] = {{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  const double s = u * 4;
  const int i = std::min(3, static_cast<int>(s));
  const double f = s - i;
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]))),
                static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1]))),
                static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2]))));
  return buf;
}

std::string render_contour(const CsvTable& t, const PlotSpec& spec) {
  const std::size_t cx = t.column(spec.x), cy = t.column(spec.y), cz = t.column(spec.z);
  Axis ax{.log = spec.log_x}, ay{.log = spec.log_y};
  std::map<std::pair<double, double>, double> cells;  // transformed (x, y) -> min z
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    double x, y, z;
    if (!cell_value(row[cx], t.row_lines[i], x) || !cell_value(row[cy], t.row_lines[i], y) ||
        !cell_value(row[cz], t.row_lines[i], z))
      continue;
    if ((spec.log_x && x <= 0) || (spec.log_y && y <= 0)) continue;
    const auto key = std::make_pair(ax.tr(x), ay.tr(y));
    const double lz = std::log10(std::max(z, 1e-17));  // exact zeros sit at the floor
    auto it = cells.find(key);
    if (it == cells.end() || lz < it->second) cells[key] = lz;
  }
  if (cells.empty()) throw InputError("nothing to plot: no finite (" + spec.x + ", " + spec.y + ") rows");

  std::vector<double> xs, ys;
  double zmin = std::numeric_limits<double>::infinity(), zmax = -zmin;
  for (const auto& [k, z] : cells) {
    xs.push_back(k.first);
    ys.push_back(k.second);
    zmin = std::min(zmin, z);
    zmax = std::max(zmax, z);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const auto ex = edges(xs), ey = edges(ys);
  // Axes span the cell edges exactly; no decade rounding here.
  ax.lo = ex.front();
  ax.hi = ex.back();
  ay.lo = ey.front();
  ay.hi = ey.back();
  ax.pix0 = kLeft;
  ax.pix1 = spec.width - kRight;
  ay.pix0 = spec.height - kBottom;
  ay.pix1 = kTop;
  const double zspan = zmax - zmin > 0 ? zmax - zmin : 1.0;

  std::ostringstream os;
  os << header(spec);
  for (const auto& [k, z] : cells) {
    const auto ix = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), k.first) - xs.begin());
    const auto iy = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), k.second) - ys.begin());
    const double px0 = ax.map_t(ex[ix]), px1 = ax.map_t(ex[ix + 1]);
    const double py0 = ay.map_t(ey[iy + 1]), py1 = ay.map_t(ey[iy]);
    os << "<rect x=\"" << num(px0) << "\" y=\"" << num(py0) << "\" width=\"" << num(px1 - px0)
       << "\" height=\"" << num(py1 - py0) << "\" fill=\"" << ramp((z - zmin) / zspan)
       << "\"/>\n";
  }
  draw_frame(os, spec, ax, ay, axis_label(spec.x, spec.log_x), axis_label(spec.y, spec.log_y));

  // Colour bar in log10(z).
  const double bx = spec.width - kRight + 30, bw = 20, btop = kTop, bbot = spec.height - kBottom;
  constexpr int kSteps = 32;
  for (int s = 0; s < kSteps; ++s) {
    const double h = (bbot - btop) / kSteps;
    os << "<rect x=\"" << num(bx) << "\" y=\"" << num(bbot - (s + 1) * h) << "\" width=\""
       << num(bw) << "\" height=\"" << num(h) << "\" fill=\"" << ramp((s + 0.5) / kSteps)
       << "\"/>\n";
  }
  for (int s = 0; s <= 4; ++s) {
    const double v = zmin + zspan * s / 4.0;
    const double py = bbot - (bbot - btop) * s / 4.0;
    os << "<text x=\"" << num(bx + bw + 5) << "\" y=\"" << num(py + 4)
       << "\" font-size=\"11\">1e" << num(v) << "</text>\n";
  }
  os << "<text x=\"" << num(bx) << "\" y=\"" << num(btop - 8) << "\" font-size=\"11\">"
     << escape(spec.z) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace

PlotSpec default_plot_spec(const std::string& experiment) {
  PlotSpec s;
  s.title = experiment;
  if (experiment == "sweep-eps-n") {
    s.kind = PlotKind::Contour;
    s.x = "eps";
    s.y = "n";
    s.log_y = false;
    s.series.clear();
  } else if (experiment == "poly-compare") {
    s.series = {"method", "l"};
  } else if (experiment == "radius-scaling") {
    s.x = "radius";
  } else if (experiment == "cost-study") {
    s.x = "unknowns";
    s.log_x = false;
    s.series = {"method", "eps", "radius"};
  } else if (experiment != "method-compare" && !experiment.empty()) {
    throw InputError("no default plot for experiment '" + experiment + "'");
  }
  return s;
}

std::string render_svg(const CsvTable& table, const PlotSpec& spec) {
  if (spec.width < 300 || spec.height < 200) throw InputError("plot size too small");
  return spec.kind == PlotKind::Contour ? render_contour(table, spec) : render_lines(table, spec);
}

void emit_plot(const std::string& csv_path, const PlotSpec& spec, const std::string& svg_path) {
  const std::string svg = render_svg(read_csv_file(csv_path), spec);
  std::ofstream os(svg_path, std::ios::binary);
  if (!os) throw InputError("cannot write '" + svg_path + "'");
  os << svg;
  if (!os) throw InputError("write failed for '" + svg_path + "'");
}

}  // namespace mhrbf
