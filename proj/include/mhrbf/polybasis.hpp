#pragma once

#include <utility>
#include <vector>

#include "mhrbf/point.hpp"

namespace mhrbf {

/// C(l + d, d): number of monomials of total degree <= l in d variables.
int poly_count(int degree, int dim);

// Bivariate monomials of total degree <= l in graded lexicographic order:
//   1, x, y, x^2, xy, y^2, x^3, x^2 y, x y^2, y^3, ...
class PolyBasis {
 public:
  explicit PolyBasis(int degree);

  int degree() const { return degree_; }
  int term_count() const { return static_cast<int>(exponents_.size()); }
  /// (power of x, power of y) for term k.
  const std::vector<std::pair<int, int>>& exponents() const { return exponents_; }

  std::vector<double> eval(Point x) const;
  /// Row k holds (dp_k/dx, dp_k/dy).
  std::vector<Point> grad(Point x) const;

  void eval_into(Point x, double* out) const;
  void grad_into(Point x, Point* out) const;

 private:
  int degree_;
  std::vector<std::pair<int, int>> exponents_;
};

}  // namespace mhrbf
