#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace mhrbf {

// 2D coordinate. Also used for coordinate differences.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;

  double norm() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(Point a, Point b) { return (a - b).norm(); }

// Graded-lex order on coordinates: x first, then y.
inline bool coord_less(Point a, Point b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

// Error categories. The CLI maps InputError to exit code 1 and everything
// else to exit code 2.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AssemblyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : InputError {
  ParseError(const std::string& what, int line)
      : InputError("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

}  // namespace mhrbf
