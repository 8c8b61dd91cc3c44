#include "mhrbf/polybasis.hpp"

#include <string>

namespace mhrbf {

int poly_count(int degree, int dim) {
  if (degree < 0) throw InputError("polynomial degree must be >= 0");
  if (dim < 1) throw InputError("dimension must be >= 1");
  // C(l + d, d) built incrementally; every partial product is an integer.
  long long c = 1;
  for (int i = 1; i <= dim; ++i) c = c * (degree + i) / i;
  return static_cast<int>(c);
}

PolyBasis::PolyBasis(int degree) : degree_(degree) {
  if (degree < 0) throw InputError("polynomial degree must be >= 0");
  exponents_.reserve(poly_count(degree, 2));
  for (int total = 0; total <= degree; ++total)
    for (int py = 0; py <= total; ++py) exponents_.emplace_back(total - py, py);
}

void PolyBasis::eval_into(Point x, double* out) const {
  // Powers up to degree, indexed directly.
  std::vector<double> px(degree_ + 1, 1.0), py(degree_ + 1, 1.0);
  for (int i = 1; i <= degree_; ++i) {
    px[i] = px[i - 1] * x.x;
    py[i] = py[i - 1] * x.y;
  }
  for (std::size_t k = 0; k < exponents_.size(); ++k)
    out[k] = px[exponents_[k].first] * py[exponents_[k].second];
}

void PolyBasis::grad_into(Point x, Point* out) const {
  std::vector<double> px(degree_ + 1, 1.0), py(degree_ + 1, 1.0);
  for (int i = 1; i <= degree_; ++i) {
    px[i] = px[i - 1] * x.x;
    py[i] = py[i - 1] * x.y;
  }
  for (std::size_t k = 0; k < exponents_.size(); ++k) {
    const auto [a, b] = exponents_[k];
    out[k] = {a > 0 ? a * px[a - 1] * py[b] : 0.0, b > 0 ? b * px[a] * py[b - 1] : 0.0};
  }
}

std::vector<double> PolyBasis::eval(Point x) const {
  std::vector<double> out(exponents_.size());
  eval_into(x, out.data());
  return out;
}

std::vector<Point> PolyBasis::grad(Point x) const {
  std::vector<Point> out(exponents_.size());
  grad_into(x, out.data());
  return out;
}

}  // namespace mhrbf
