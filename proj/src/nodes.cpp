#include "mhrbf/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "mhrbf/csv.hpp"

namespace mhrbf {

namespace {

constexpr int kMaxEnergyIterations = 5000;
constexpr std::size_t kNonMonotoneWindow = 10;

// Uniform double in [0,1) from the top 53 bits; platform independent,
// unlike std::uniform_real_distribution.
double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double dist2(Point a, Point b) {
  const Point d = a - b;
  return d.x * d.x + d.y * d.y;
}

void sort_by_radius(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    const double ra = a.x * a.x + a.y * a.y, rb = b.x * b.x + b.y * b.y;
    return ra < rb || (ra == rb && coord_less(a, b));
  });
}

}  // namespace

NodeSet::NodeSet(std::vector<Point> data, std::vector<Point> eval, double radius,
                 std::string kind, std::uint64_t seed)
    : eval_(std::move(eval)), radius_(radius), kind_(std::move(kind)), seed_(seed) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InputError("node set radius must be positive");
  set_data_nodes(std::move(data));
}

void NodeSet::set_data_nodes(std::vector<Point> data) {
  const double slack = radius_ * (1.0 + 1e-12);
  const double min_sep = 1e-12 * radius_;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!data[i].finite()) throw GeometryError("data node is not finite");
    if (data[i].norm() > slack) throw GeometryError("data node outside the disk of radius R");
    for (std::size_t j = 0; j < i; ++j)
      if (distance(data[i], data[j]) <= min_sep) throw GeometryError("duplicate data nodes");
  }
  data_ = std::move(data);
  avg_spacing_ = mean_nearest_spacing(data_);
}

double mean_nearest_spacing(const std::vector<Point>& pts) {
  if (pts.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) best = std::min(best, dist2(pts[i], pts[j]));
    total += std::sqrt(best);
  }
  return total / static_cast<double>(pts.size());
}

double radical_inverse(std::uint64_t index, int base) {
  double result = 0.0;
  double scale = 1.0 / base;
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale /= base;
  }
  return result;
}

Point halton_point(std::uint64_t index) {
  if (index < 1) throw InputError("Halton index must be >= 1");
  return {radical_inverse(index, 2), radical_inverse(index, 3)};
}

std::vector<Point> halton_eval_nodes(int count, double region_radius) {
  if (count < 1) throw InputError("evaluation node count must be >= 1");
  if (!(region_radius > 0.0)) throw InputError("evaluation region radius must be positive");
  std::vector<Point> out;
  out.reserve(count);
  for (std::uint64_t i = 1; static_cast<int>(out.size()) < count; ++i) {
    const Point h = halton_point(i);
    const Point p{region_radius * (2.0 * h.x - 1.0), region_radius * (2.0 * h.y - 1.0)};
    if (p.norm() <= region_radius) out.push_back(p);
  }
  return out;
}

double riesz_energy(const std::vector<Point>& pts, double s) {
  double e = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) e += std::pow(dist2(pts[i], pts[j]), -0.5 * s);
  return 2.0 * e;
}

MinEnergyResult min_energy_nodes(int count, double radius, std::uint64_t seed, double s) {
  if (count < 3) throw InputError("min-energy layout needs at least 3 nodes");
  if (!(radius > 0.0)) throw InputError("radius must be positive");
  if (!(s > 0.0)) throw InputError("Riesz exponent must be positive");

  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(count);
  while (static_cast<int>(pts.size()) < count) {
    const Point p{radius * (2.0 * unit_double(rng) - 1.0), radius * (2.0 * unit_double(rng) - 1.0)};
    if (p.norm() > radius) continue;
    const bool clash = std::any_of(pts.begin(), pts.end(),
                                   [&](Point q) { return distance(p, q) <= 1e-9 * radius; });
    if (!clash) pts.push_back(p);
  }

  MinEnergyResult res;
  res.initial_energy = riesz_energy(pts, s);
  double energy = res.initial_energy;
  const double tol = 1e-8 * radius;

  // Projected gradient descent with Barzilai-Borwein steps and a
  // non-monotone acceptance test against the last few energies. The best
  // configuration seen is what gets returned.
  auto gradient = [&](const std::vector<Point>& x, std::vector<Point>& g) {
    double gmax = 0.0;
    for (int i = 0; i < count; ++i) {
      Point f{0.0, 0.0};
      for (int j = 0; j < count; ++j)
        if (j != i) f = f + std::pow(dist2(x[i], x[j]), -0.5 * s - 1.0) * (x[i] - x[j]);
      // Boundary nodes pushed outward may only slide along the circle.
      const double r = x[i].norm();
      if (r >= radius * (1.0 - 1e-12)) {
        const double outward = (f.x * x[i].x + f.y * x[i].y) / (r * r);
        if (outward > 0.0) f = f - outward * x[i];
      }
      g[i] = (-2.0 * s) * f;
      gmax = std::max(gmax, g[i].norm());
    }
    return gmax;
  };

  std::vector<Point> grad(count), trial(count), trial_grad(count);
  std::vector<Point> best = pts;
  double best_energy = energy;
  std::deque<double> recent{energy};
  double gmax = gradient(pts, grad);
  double step = gmax > 0.0 ? 0.1 * radius / (std::sqrt(static_cast<double>(count)) * gmax) : 0.0;

  for (res.iterations = 0; res.iterations < kMaxEnergyIterations; ++res.iterations) {
    if (gmax == 0.0 || step * gmax < tol) {
      res.converged = true;
      break;
    }
    double moved = 0.0;
    for (int i = 0; i < count; ++i) {
      Point p = pts[i] - step * grad[i];
      const double r = p.norm();
      if (r > radius) p = (radius / r) * p;
      trial[i] = p;
      moved = std::max(moved, distance(p, pts[i]));
    }
    const double trial_energy = riesz_energy(trial, s);
    const double reference = *std::max_element(recent.begin(), recent.end());
    if (!(trial_energy < reference)) {
      step *= 0.5;
      continue;
    }
    const double trial_gmax = gradient(trial, trial_grad);
    double ss = 0.0, sy = 0.0;
    for (int i = 0; i < count; ++i) {
      const Point ds = trial[i] - pts[i], dy = trial_grad[i] - grad[i];
      ss += ds.x * ds.x + ds.y * ds.y;
      sy += ds.x * dy.x + ds.y * dy.y;
    }
    pts.swap(trial);
    grad.swap(trial_grad);
    energy = trial_energy;
    gmax = trial_gmax;
    recent.push_back(energy);
    if (recent.size() > kNonMonotoneWindow) recent.pop_front();
    if (energy < best_energy) {
      best_energy = energy;
      best = pts;
    }
    step = sy > 0.0 ? ss / sy : 2.0 * step;
    if (moved < tol) {
      res.converged = true;
      ++res.iterations;
      break;
    }
  }

  res.final_energy = best_energy;
  sort_by_radius(best);
  res.points = std::move(best);
  return res;
}

std::vector<Point> k_nearest_subset(const std::vector<Point>& nodes, Point anchor, int k) {
  if (k < 0 || k > static_cast<int>(nodes.size()))
    throw InputError("k_nearest_subset: k exceeds the number of available nodes");
  std::vector<Point> sorted = nodes;
  std::sort(sorted.begin(), sorted.end(), [anchor](Point a, Point b) {
    const double da = dist2(a, anchor), db = dist2(b, anchor);
    return da < db || (da == db && coord_less(a, b));
  });
  sorted.resize(k);
  return sorted;
}

std::vector<Point> triangle_eval_nodes(const std::array<Point, 3>& v, int count) {
  if (count < 1) throw InputError("evaluation node count must be >= 1");
  const Point e1 = v[1] - v[0], e2 = v[2] - v[0];
  const double area2 = std::abs(e1.x * e2.y - e1.y * e2.x);
  const double scale = std::max({e1.norm(), e2.norm(), distance(v[1], v[2])});
  if (!(area2 > 1e-14 * scale * scale)) throw GeometryError("degenerate triangle");

  std::vector<Point> out;
  out.reserve(count);
  for (int i = 1; i <= count; ++i) {
    const Point h = halton_point(i);
    const double su = std::sqrt(h.x);
    const double b0 = 1.0 - su, b1 = su * (1.0 - h.y), b2 = su * h.y;
    out.push_back({b0 * v[0].x + b1 * v[1].x + b2 * v[2].x,
                   b0 * v[0].y + b1 * v[1].y + b2 * v[2].y});
  }
  return out;
}

NodeSet scale_node_set(const NodeSet& set, double new_radius) {
  if (!(new_radius > 0.0)) throw InputError("new radius must be positive");
  const double factor = new_radius / set.radius();
  auto scaled = [factor](const std::vector<Point>& pts) {
    std::vector<Point> out;
    out.reserve(pts.size());
    for (Point p : pts) out.push_back(factor * p);
    return out;
  };
  return NodeSet(scaled(set.data_nodes()), scaled(set.eval_nodes()), new_radius, set.kind(),
                 set.seed());
}

void write_node_set(std::ostream& os, const NodeSet& set) {
  const auto total = set.data_nodes().size() + set.eval_nodes().size();
  os << "# kind,radius,seed,count\n";
  os << set.kind() << ',' << fmt_double(set.radius()) << ',' << set.seed() << ',' << total << '\n';
  os << "x,y,role\n";
  for (Point p : set.data_nodes()) os << fmt_double(p.x) << ',' << fmt_double(p.y) << ",data\n";
  for (Point p : set.eval_nodes()) os << fmt_double(p.x) << ',' << fmt_double(p.y) << ",eval\n";
}

NodeSet read_node_set(std::istream& is) {
  std::string line;
  int lineno = 0;
  auto next = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next() || line != "# kind,radius,seed,count") throw ParseError("missing node-set header", lineno);
  if (!next()) throw ParseError("missing node-set metadata row", lineno);
  auto meta = split_csv_line(line);
  if (meta.size() != 4) throw ParseError("metadata row needs 4 fields", lineno);
  const std::string kind = meta[0];
  const double radius = parse_double(meta[1], lineno);
  const auto seed = static_cast<std::uint64_t>(parse_int(meta[2], lineno));
  const auto count = parse_int(meta[3], lineno);
  if (!next() || line != "x,y,role") throw ParseError("missing 'x,y,role' column header", lineno);

  std::vector<Point> data, eval;
  while (next()) {
    auto f = split_csv_line(line);
    if (f.size() != 3) throw ParseError("node row needs 3 fields", lineno);
    const Point p{parse_double(f[0], lineno), parse_double(f[1], lineno)};
    if (f[2] == "data") data.push_back(p);
    else if (f[2] == "eval") eval.push_back(p);
    else throw ParseError("role must be data or eval", lineno);
  }
  if (static_cast<long long>(data.size() + eval.size()) != count)
    throw ParseError("row count does not match header count", lineno);
  return NodeSet(std::move(data), std::move(eval), radius, kind, seed);
}

void save_node_set(const std::string& path, const NodeSet& set) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot open '" + path + "' for writing");
  write_node_set(os, set);
}

NodeSet load_node_set(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open '" + path + "'");
  return read_node_set(is);
}

}  // namespace mhrbf
