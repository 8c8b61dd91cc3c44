#include "mhrbf/testfuncs.hpp"

#include <cmath>

namespace mhrbf {

double trig_value(double x, double y) {
  return std::sin(6.0 * x) + std::cos(4.0 * y) + std::sin(3.0 * x + 2.0 * y);
}

Point trig_grad(double x, double y) {
  const double c = std::cos(3.0 * x + 2.0 * y);
  return {6.0 * std::cos(6.0 * x) + 3.0 * c, -4.0 * std::sin(4.0 * y) + 2.0 * c};
}

double camelback_value(double x, double y) {
  const double x2 = x * x, y2 = y * y;
  return (4.0 - 2.1 * x2 + x2 * x2 / 3.0) * x2 + x * y + (-4.0 + 4.0 * y2) * y2;
}

Point camelback_grad(double x, double y) {
  const double x2 = x * x;
  return {8.0 * x - 8.4 * x2 * x + 2.0 * x2 * x2 * x + y, x - 8.0 * y + 16.0 * y * y * y};
}

double TestFunction::value(Point p) const {
  return id == FunctionId::Trig ? trig_value(p.x, p.y) : camelback_value(p.x, p.y);
}

Point TestFunction::gradient(Point p) const {
  return id == FunctionId::Trig ? trig_grad(p.x, p.y) : camelback_grad(p.x, p.y);
}

std::string TestFunction::name() const { return id == FunctionId::Trig ? "trig" : "camelback"; }

TestFunction parse_function(const std::string& name) {
  if (name == "trig") return {FunctionId::Trig};
  if (name == "camelback") return {FunctionId::Camelback};
  throw InputError("unknown function '" + name + "' (expected trig|camelback)");
}

}  // namespace mhrbf
