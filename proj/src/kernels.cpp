#include "mhrbf/kernels.hpp"

#include <cmath>

namespace mhrbf {

namespace {

thread_local std::uint64_t g_hessian_evals = 0;

double ipow(double base, int exp) {
  double result = 1.0;
  while (exp > 0) {
    if (exp & 1) result *= base;
    base *= base;
    exp >>= 1;
  }
  return result;
}

void check_finite(Point p, const char* what) {
  if (!p.finite()) throw InputError(std::string(what) + " is not finite");
}

int phs_order(const KernelSpec& spec) { return 2 * spec.phs_k - 1; }

}  // namespace

void KernelSpec::validate() const {
  if (family == KernelFamily::PolyharmonicSpline) {
    if (phs_k < 1) throw InputError("polyharmonic spline order k must be >= 1");
    return;
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InputError("shape parameter must be positive and finite");
}

void MonomialScaling::validate() const {
  if (n < 1) throw InputError("monomial degree n must be >= 1");
}

std::string family_name(KernelFamily family) {
  switch (family) {
    case KernelFamily::Gaussian: return "ga";
    case KernelFamily::Multiquadric: return "mq";
    case KernelFamily::InverseMultiquadric: return "imq";
    case KernelFamily::InverseQuadric: return "iq";
    case KernelFamily::PolyharmonicSpline: return "phs";
  }
  return "?";
}

KernelFamily parse_family(const std::string& name) {
  if (name == "ga") return KernelFamily::Gaussian;
  if (name == "mq") return KernelFamily::Multiquadric;
  if (name == "imq") return KernelFamily::InverseMultiquadric;
  if (name == "iq") return KernelFamily::InverseQuadric;
  if (name == "phs") return KernelFamily::PolyharmonicSpline;
  throw InputError("unknown kernel '" + name + "' (expected ga|mq|imq|iq|phs)");
}

double kernel_value(const KernelSpec& spec, double r) {
  if (!std::isfinite(r) || r < 0.0) throw InputError("kernel radius must be finite and >= 0");
  const double s = spec.epsilon * r;
  switch (spec.family) {
    case KernelFamily::Gaussian: return std::exp(-s * s);
    case KernelFamily::Multiquadric: return std::sqrt(1.0 + s * s);
    case KernelFamily::InverseMultiquadric: return 1.0 / std::sqrt(1.0 + s * s);
    case KernelFamily::InverseQuadric: return 1.0 / (1.0 + s * s);
    case KernelFamily::PolyharmonicSpline: return ipow(r, phs_order(spec));
  }
  return 0.0;
}

KernelGrad kernel_first_derivs(const KernelSpec& spec, Point dx) {
  check_finite(dx, "kernel offset");
  const double q = spec.epsilon * spec.epsilon;
  const double r2 = dx.x * dx.x + dx.y * dx.y;
  // All families are written as phi = F(r^2); grad = 2 F'(r^2) dx.
  double value = 0.0;
  double g = 0.0;  // 2 F'(r^2)
  switch (spec.family) {
    case KernelFamily::Gaussian:
      value = std::exp(-q * r2);
      g = -2.0 * q * value;
      break;
    case KernelFamily::Multiquadric:
      value = std::sqrt(1.0 + q * r2);
      g = q / value;
      break;
    case KernelFamily::InverseMultiquadric:
      value = 1.0 / std::sqrt(1.0 + q * r2);
      g = -q * value * value * value;
      break;
    case KernelFamily::InverseQuadric:
      value = 1.0 / (1.0 + q * r2);
      g = -2.0 * q * value * value;
      break;
    case KernelFamily::PolyharmonicSpline: {
      const int m = phs_order(spec);
      const double r = std::sqrt(r2);
      value = ipow(r, m);
      if (r2 == 0.0) {
        if (m == 1) throw DomainError("phs r^1: gradient undefined at r = 0");
        g = 0.0;
      } else {
        g = m * ipow(r, m - 1) / r;  // m r^(m-2), safe for m = 1
      }
      break;
    }
  }
  return {value, {g * dx.x, g * dx.y}};
}

KernelDerivs kernel_cartesian_derivs(const KernelSpec& spec, Point dx) {
  ++g_hessian_evals;
  check_finite(dx, "kernel offset");
  const double q = spec.epsilon * spec.epsilon;
  const double r2 = dx.x * dx.x + dx.y * dx.y;
  // grad = g dx,  hess = g I + c dx dx^T
  double value = 0.0, g = 0.0, c = 0.0;
  switch (spec.family) {
    case KernelFamily::Gaussian:
      value = std::exp(-q * r2);
      g = -2.0 * q * value;
      c = 4.0 * q * q * value;
      break;
    case KernelFamily::Multiquadric:
      value = std::sqrt(1.0 + q * r2);
      g = q / value;
      c = -q * q / (value * value * value);
      break;
    case KernelFamily::InverseMultiquadric: {
      value = 1.0 / std::sqrt(1.0 + q * r2);
      const double v3 = value * value * value;
      g = -q * v3;
      c = 3.0 * q * q * v3 * value * value;
      break;
    }
    case KernelFamily::InverseQuadric: {
      value = 1.0 / (1.0 + q * r2);
      const double v2 = value * value;
      g = -2.0 * q * v2;
      c = 8.0 * q * q * v2 * value;
      break;
    }
    case KernelFamily::PolyharmonicSpline: {
      const int m = phs_order(spec);
      if (r2 == 0.0) {
        if (m == 1) throw DomainError("phs r^1: derivatives undefined at r = 0");
        return {0.0, {0.0, 0.0}, 0.0, 0.0, 0.0};
      }
      const double r = std::sqrt(r2);
      value = ipow(r, m);
      g = m * value / r2;                      // m r^(m-2)
      c = m * (m - 2) * value / (r2 * r2);     // m (m-2) r^(m-4)
      break;
    }
  }
  return {value,
          {g * dx.x, g * dx.y},
          g + c * dx.x * dx.x,
          c * dx.x * dx.y,
          g + c * dx.y * dx.y};
}

namespace detail {
std::uint64_t hessian_eval_count() { return g_hessian_evals; }
void reset_hessian_eval_count() { g_hessian_evals = 0; }
}  // namespace detail

ModifiedValues modified_basis_values(const KernelSpec& spec, MonomialScaling scaling,
                                     Point x, Point center) {
  check_finite(x, "evaluation point");
  check_finite(center, "center");
  const Point d = x - center;
  const double phi = kernel_value(spec, d.norm());
  const double xn = ipow(d.x, scaling.n);
  const double yn = ipow(d.y, scaling.n);
  return {xn * yn * phi, xn * xn * phi, yn * yn * phi};
}

ModifiedBasis modified_basis(const KernelSpec& spec, MonomialScaling scaling, Point x,
                             Point center) {
  check_finite(x, "evaluation point");
  check_finite(center, "center");
  const Point d = x - center;
  const int n = scaling.n;
  const KernelGrad k = kernel_first_derivs(spec, d);
  const double xn1 = ipow(d.x, n - 1), yn1 = ipow(d.y, n - 1);
  const double xn = xn1 * d.x, yn = yn1 * d.y;
  const double xnyn = xn * yn, x2n = xn * xn, y2n = yn * yn;

  ModifiedBasis out;
  out.values = {xnyn * k.value, x2n * k.value, y2n * k.value};
  out.grads.psi_w = {n * xn1 * yn * k.value + xnyn * k.grad.x,
                     n * xn * yn1 * k.value + xnyn * k.grad.y};
  out.grads.psi_alpha = {2 * n * xn1 * xn * k.value + x2n * k.grad.x, x2n * k.grad.y};
  out.grads.psi_beta = {y2n * k.grad.x, 2 * n * yn1 * yn * k.value + y2n * k.grad.y};
  return out;
}

ModifiedGrads modified_basis_grads(const KernelSpec& spec, MonomialScaling scaling,
                                   Point x, Point center) {
  return modified_basis(spec, scaling, x, center).grads;
}

double modified_basis_value_1d(const KernelSpec& spec, MonomialScaling scaling,
                               double x, double center) {
  const double d = x - center;
  return ipow(d, scaling.n) * kernel_value(spec, std::abs(d));
}

double modified_basis_deriv_1d(const KernelSpec& spec, MonomialScaling scaling,
                               double x, double center) {
  const double d = x - center;
  const KernelGrad k = kernel_first_derivs(spec, {d, 0.0});
  return scaling.n * ipow(d, scaling.n - 1) * k.value + ipow(d, scaling.n) * k.grad.x;
}

}  // namespace mhrbf
