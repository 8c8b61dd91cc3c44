#pragma once
// Finite-difference helpers shared by the unit tests.

#include <algorithm>
#include <cmath>

#include "mhrbf/point.hpp"

namespace fd {

template <class F>
mhrbf::Point central_grad(F f, mhrbf::Point p, double h) {
  return {(f({p.x + h, p.y}) - f({p.x - h, p.y})) / (2 * h),
          (f({p.x, p.y + h}) - f({p.x, p.y - h})) / (2 * h)};
}

// |a - b| relative to max(1, |b|).
inline double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace fd
