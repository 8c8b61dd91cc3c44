#pragma once

#include <string>

#include "mhrbf/point.hpp"

namespace mhrbf {

enum class FunctionId { Trig, Camelback };

// f = sin(6x) + cos(4y) + sin(3x + 2y)
double trig_value(double x, double y);
Point trig_grad(double x, double y);

// Six-hump camelback: (4 - 2.1x^2 + x^4/3) x^2 + xy + (-4 + 4y^2) y^2
double camelback_value(double x, double y);
Point camelback_grad(double x, double y);

struct TestFunction {
  FunctionId id;

  double value(Point p) const;
  Point gradient(Point p) const;
  std::string name() const;
};

TestFunction parse_function(const std::string& name);

}  // namespace mhrbf
