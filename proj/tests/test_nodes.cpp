#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "mhrbf/nodes.hpp"

using namespace mhrbf;

namespace {

// Radical inverse by explicit digit expansion into an exact fraction.
double expand(std::uint64_t index, std::uint64_t base) {
  std::uint64_t num = 0, den = 1;
  while (index > 0) {
    num = num * base + index % base;
    den *= base;
    index /= base;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

double min_pair_distance(const std::vector<Point>& p) {
  double m = INFINITY;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) m = std::min(m, distance(p[i], p[j]));
  return m;
}

std::array<double, 3> barycentric(const std::array<Point, 3>& t, Point p) {
  const double det = (t[1].y - t[2].y) * (t[0].x - t[2].x) + (t[2].x - t[1].x) * (t[0].y - t[2].y);
  const double a = ((t[1].y - t[2].y) * (p.x - t[2].x) + (t[2].x - t[1].x) * (p.y - t[2].y)) / det;
  const double b = ((t[2].y - t[0].y) * (p.x - t[2].x) + (t[0].x - t[2].x) * (p.y - t[2].y)) / det;
  return {a, b, 1 - a - b};
}

}  // namespace

TEST_CASE("halton points") {
  CHECK(halton_point(1) == Point{0.5, 1.0 / 3});
  CHECK(halton_point(2) == Point{0.25, 2.0 / 3});
  CHECK(halton_point(4).x == 0.125);
  CHECK(halton_point(4).y == doctest::Approx(4.0 / 9).epsilon(1e-15));
}

TEST_CASE("radical inverse matches digit expansion for the first 100 indices") {
  for (std::uint64_t i = 1; i <= 100; ++i) {
    CHECK(radical_inverse(i, 2) == doctest::Approx(expand(i, 2)).epsilon(1e-15));
    CHECK(radical_inverse(i, 3) == doctest::Approx(expand(i, 3)).epsilon(1e-15));
    const Point h = halton_point(i);
    CHECK(h.x >= 0.0);
    CHECK(h.x < 1.0);
    CHECK(h.y >= 0.0);
    CHECK(h.y < 1.0);
  }
}

TEST_CASE("halton eval nodes in a disk") {
  const double r = 0.1 / 3;
  const auto pts = halton_eval_nodes(60, r);
  CHECK(pts.size() == 60);
  for (const auto& p : pts) CHECK(p.norm() <= r);
  CHECK(halton_eval_nodes(60, r) == pts);
  CHECK(halton_eval_nodes(1, r).size() == 1);
  // affine map of the square, first accepted point is the first inside
  std::uint64_t i = 1;
  Point first;
  do {
    const Point h = halton_point(i++);
    first = {r * (2 * h.x - 1), r * (2 * h.y - 1)};
  } while (first.norm() > r);
  CHECK(pts[0].x == doctest::Approx(first.x));
  CHECK(pts[0].y == doctest::Approx(first.y));
  CHECK_THROWS_AS(halton_eval_nodes(0, r), InputError);
}

TEST_CASE("three repelling points settle on an equilateral triangle") {
  const auto res = min_energy_nodes(3, 1.0, 1);
  REQUIRE(res.points.size() == 3);
  const double d01 = distance(res.points[0], res.points[1]);
  const double d02 = distance(res.points[0], res.points[2]);
  const double d12 = distance(res.points[1], res.points[2]);
  CHECK(std::abs(d01 - d02) < 1e-4);
  CHECK(std::abs(d01 - d12) < 1e-4);

  // brute force: grid over polar coordinates of two points, the first pinned
  // at angle 0 (rotation invariance), radii on a coarse grid
  double best = INFINITY;
  const int na = 360;
  const double radii[] = {0.6, 0.8, 0.9, 1.0};
  for (double r0 : radii)
    for (double r1 : radii)
      for (double r2 : radii)
        for (int a = 1; a < na; ++a)
          for (int b = a + 1; b < na; ++b) {
            const double ta = 2 * std::numbers::pi * a / na, tb = 2 * std::numbers::pi * b / na;
            const std::vector<Point> p = {{r0, 0}, {r1 * std::cos(ta), r1 * std::sin(ta)},
                                          {r2 * std::cos(tb), r2 * std::sin(tb)}};
            best = std::min(best, riesz_energy(p));
          }
  // the brute-force optimum is the boundary equilateral triangle, side sqrt(3)
  CHECK(best == doctest::Approx(riesz_energy({{1, 0}, {-0.5, std::sqrt(3.0) / 2}, {-0.5, -std::sqrt(3.0) / 2}})));
  CHECK(res.final_energy <= best * (1 + 1e-8));
  CHECK(d01 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-4));
}

TEST_CASE("56 min-energy nodes in R=0.1") {
  for (double s : {1.0, 3.0}) {
    const auto res = min_energy_nodes(56, 0.1, 1, s);
    REQUIRE(res.points.size() == 56);
    for (const auto& p : res.points) CHECK(p.norm() <= 0.1 * (1 + 1e-12));
    CHECK(min_pair_distance(res.points) > 0.3 * 2 * 0.1 / std::sqrt(56.0));
    CHECK(res.final_energy <= res.initial_energy);
    CHECK(res.final_energy == doctest::Approx(riesz_energy(res.points, s)));
    auto r2 = [](Point p) { return p.x * p.x + p.y * p.y; };
    for (std::size_t i = 1; i < res.points.size(); ++i) CHECK(r2(res.points[i - 1]) <= r2(res.points[i]));
    const auto again = min_energy_nodes(56, 0.1, 1, s);
    CHECK(again.points == res.points);
    CHECK(again.iterations == res.iterations);
  }
  CHECK(min_energy_nodes(20, 1.0, 2).points != min_energy_nodes(20, 1.0, 3).points);
  CHECK_THROWS_AS(min_energy_nodes(2, 1.0, 1), InputError);
  CHECK_THROWS_AS(min_energy_nodes(10, -1.0, 1), InputError);
}

TEST_CASE("k nearest subset") {
  const std::vector<Point> nodes = {{1, 0}, {0, 2}, {3, 0}};
  CHECK(k_nearest_subset(nodes, {0, 0}, 2) == std::vector<Point>{{1, 0}, {0, 2}});
  auto all = k_nearest_subset(nodes, {0, 0}, 3);
  CHECK(std::is_permutation(all.begin(), all.end(), nodes.begin()));
  CHECK_THROWS_AS(k_nearest_subset(nodes, {0, 0}, 4), InputError);
  // ties go to graded-lex coordinate order
  const std::vector<Point> ring = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}};
  CHECK(k_nearest_subset(ring, {0, 0}, 4) == std::vector<Point>{{-1, 0}, {0, -1}, {0, 1}, {1, 0}});
}

TEST_CASE("k nearest subset matches a brute-force selection") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Point> nodes(104);
  for (auto& p : nodes) p = {u(rng), u(rng)};
  for (int k : {3, 10, 57, 104}) {
    const Point anchor{0.1, -0.2};
    // O(N^2) selection: repeatedly pick the nearest unused node
    std::vector<Point> brute, pool = nodes;
    for (int i = 0; i < k; ++i) {
      std::size_t best = 0;
      for (std::size_t j = 1; j < pool.size(); ++j)
        if (distance(pool[j], anchor) < distance(pool[best], anchor)) best = j;
      brute.push_back(pool[best]);
      pool.erase(pool.begin() + static_cast<long>(best));
    }
    CHECK(k_nearest_subset(nodes, anchor, k) == brute);
  }
}

TEST_CASE("triangle eval nodes") {
  const std::array<Point, 3> tri = {Point{0.1, 0.0}, Point{-0.05, 0.08}, Point{-0.03, -0.09}};
  const auto pts = triangle_eval_nodes(tri, 249);
  CHECK(pts.size() == 249);
  for (const auto& p : pts)
    for (double b : barycentric(tri, p)) {
      CHECK(b > 0.0);
      CHECK(b < 1.0);
    }
  CHECK(triangle_eval_nodes(tri, 249) == pts);
  CHECK(triangle_eval_nodes(tri, 1).size() == 1);

  const std::array<Point, 3> unit = {Point{0, 0}, Point{1, 0}, Point{0, 1}};
  const auto many = triangle_eval_nodes(unit, 10000);
  Point c{0, 0};
  for (const auto& p : many) c = c + p;
  c = (1.0 / 10000) * c;
  CHECK(std::abs(c.x - 1.0 / 3) < 1e-2);
  CHECK(std::abs(c.y - 1.0 / 3) < 1e-2);

  CHECK_THROWS_AS(triangle_eval_nodes({Point{0, 0}, Point{1, 1}, Point{2, 2}}, 5), GeometryError);
}

TEST_CASE("scale_node_set") {
  const auto me = min_energy_nodes(30, 0.1, 4);
  const NodeSet set(me.points, halton_eval_nodes(20, 0.1 / 3), 0.1);
  const NodeSet same = scale_node_set(set, 0.1);
  CHECK(same.data_nodes() == set.data_nodes());
  CHECK(same.eval_nodes() == set.eval_nodes());

  const NodeSet big = scale_node_set(set, 10.0);
  CHECK(big.radius() == 10.0);
  CHECK(big.avg_spacing() == doctest::Approx(100 * set.avg_spacing()).epsilon(1e-14));
  for (std::size_t i = 0; i < set.data_nodes().size(); ++i) {
    CHECK(big.data_nodes()[i].x == doctest::Approx(100 * set.data_nodes()[i].x).epsilon(1e-14));
    CHECK(big.data_nodes()[i].y == doctest::Approx(100 * set.data_nodes()[i].y).epsilon(1e-14));
  }
  const NodeSet back = scale_node_set(big, 0.1);
  for (std::size_t i = 0; i < set.data_nodes().size(); ++i) {
    CHECK(back.data_nodes()[i].x == doctest::Approx(set.data_nodes()[i].x).epsilon(1e-14));
    CHECK(back.data_nodes()[i].y == doctest::Approx(set.data_nodes()[i].y).epsilon(1e-14));
  }
  // distance ratios
  const auto& a = set.data_nodes();
  const auto& b = big.data_nodes();
  const double r0 = distance(a[0], a[1]) / distance(a[2], a[3]);
  const double r1 = distance(b[0], b[1]) / distance(b[2], b[3]);
  CHECK(r1 == doctest::Approx(r0).epsilon(1e-14));
  CHECK_THROWS_AS(scale_node_set(set, 0.0), InputError);
}

TEST_CASE("NodeSet invariants") {
  CHECK_THROWS_AS(NodeSet({{0, 0}, {2, 0}}, {}, 1.0), GeometryError);
  CHECK_THROWS_AS(NodeSet({{0.5, 0}, {0.5, 0}}, {}, 1.0), GeometryError);
  NodeSet set({{0, 0}, {0.5, 0}}, {}, 1.0);
  CHECK(set.avg_spacing() == 0.5);
  set.set_data_nodes({{0, 0}, {0.1, 0}, {0.9, 0}});
  CHECK(set.avg_spacing() == doctest::Approx((0.1 + 0.1 + 0.8) / 3));
  CHECK_THROWS_AS(set.set_data_nodes({{0, 0}, {0, 1.5}}), GeometryError);
}

TEST_CASE("node CSV round trip is bit exact") {
  const auto me = min_energy_nodes(56, 0.1, 1, 3.0);
  const NodeSet set(me.points, halton_eval_nodes(60, 0.1 / 3), 0.1, "min_energy_disk", 1);
  std::stringstream ss;
  write_node_set(ss, set);
  const std::string text = ss.str();
  CHECK(text.rfind("# kind,radius,seed,count\nmin_energy_disk,", 0) == 0);
  const NodeSet back = read_node_set(ss);
  CHECK(back.data_nodes() == set.data_nodes());
  CHECK(back.eval_nodes() == set.eval_nodes());
  CHECK(back.radius() == set.radius());
  CHECK(back.kind() == set.kind());
  CHECK(back.seed() == set.seed());
  std::stringstream again;
  write_node_set(again, back);
  CHECK(again.str() == text);
}

TEST_CASE("malformed node CSV") {
  auto read = [](const std::string& s) {
    std::istringstream is(s);
    return read_node_set(is);
  };
  CHECK_THROWS_AS(read(""), ParseError);
  CHECK_THROWS_AS(read("# kind,radius,seed,count\nk,1,0,1\nx,y,role\n0.1,abc,data\n"), ParseError);
  CHECK_THROWS_AS(read("# kind,radius,seed,count\nk,1,0,1\nx,y,role\n0.1,0.2,center\n"), ParseError);
  CHECK_THROWS_AS(read("# kind,radius,seed,count\nk,1,0,2\nx,y,role\n0.1,0.2,data\n"), ParseError);
  try {
    read("# kind,radius,seed,count\nk,1,0,2\nx,y,role\n0.1,0.2,data\n0.3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 5);
  }
}
