#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mhrbf/point.hpp"

namespace mhrbf {

/// Data nodes, evaluation nodes and the radius of the disk that holds them.
/// The average spacing h (mean nearest-neighbour distance over the data
/// nodes) is derived and kept in sync with the data nodes.
class NodeSet {
 public:
  NodeSet() = default;
  /// Throws GeometryError if a data node lies outside the disk or two data
  /// nodes coincide.
  NodeSet(std::vector<Point> data, std::vector<Point> eval, double radius,
          std::string kind = "custom", std::uint64_t seed = 0);

  const std::vector<Point>& data_nodes() const { return data_; }
  const std::vector<Point>& eval_nodes() const { return eval_; }
  double radius() const { return radius_; }
  double avg_spacing() const { return avg_spacing_; }
  const std::string& kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }

  void set_data_nodes(std::vector<Point> data);
  void set_eval_nodes(std::vector<Point> eval) { eval_ = std::move(eval); }

 private:
  std::vector<Point> data_;
  std::vector<Point> eval_;
  double radius_ = 1.0;
  double avg_spacing_ = 0.0;
  std::string kind_ = "custom";
  std::uint64_t seed_ = 0;
};

/// Mean distance from each point to its nearest neighbour (0 for < 2 points).
double mean_nearest_spacing(const std::vector<Point>& pts);

/// Radical inverse of `index` in `base`.
double radical_inverse(std::uint64_t index, int base);

/// Halton point in bases (2, 3); index >= 1.
Point halton_point(std::uint64_t index);

/// First `count` Halton points that fall inside the disk of radius
/// `region_radius` after mapping [0,1)^2 onto its bounding square.
std::vector<Point> halton_eval_nodes(int count, double region_radius);

struct MinEnergyResult {
  std::vector<Point> points;  ///< sorted by distance from the origin
  int iterations = 0;
  bool converged = false;     ///< false: iteration cap reached, best result returned
  double initial_energy = 0.0;
  double final_energy = 0.0;
};

/// Riesz s-energy, the sum over pairs i != j of |xi - xj|^-s.
double riesz_energy(const std::vector<Point>& pts, double s = 1.0);

/// Quasi-uniform disk layout from projected descent on the Riesz energy,
/// started from a seeded uniform sample. Stops when the largest step falls
/// below 1e-8 * radius or after 5000 iterations.
MinEnergyResult min_energy_nodes(int count, double radius, std::uint64_t seed, double s = 1.0);

/// The k nodes closest to `anchor`, nearest first; ties go to graded-lex
/// coordinate order.
std::vector<Point> k_nearest_subset(const std::vector<Point>& nodes, Point anchor, int k);

/// `count` interior points of the triangle, Halton (2,3) pushed through the
/// area-uniform barycentric map (1 - sqrt u, sqrt u (1 - v), sqrt u v).
std::vector<Point> triangle_eval_nodes(const std::array<Point, 3>& vertices, int count);

/// Uniformly rescales every node so the disk radius becomes new_radius.
NodeSet scale_node_set(const NodeSet& set, double new_radius);

/// CSV form:
///   # kind,radius,seed,count
///   <kind>,<radius>,<seed>,<count>
///   x,y,role
///   ... one row per node, role is data|eval
/// Floats carry 17 significant digits so reading back is exact.
void write_node_set(std::ostream& os, const NodeSet& set);
NodeSet read_node_set(std::istream& is);
void save_node_set(const std::string& path, const NodeSet& set);
NodeSet load_node_set(const std::string& path);

}  // namespace mhrbf
