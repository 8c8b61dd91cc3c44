#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "mhrbf/point.hpp"

namespace mhrbf {

enum class KernelFamily {
  Gaussian,
  Multiquadric,
  InverseMultiquadric,
  InverseQuadric,
  PolyharmonicSpline,  ///< odd order r^(2k-1)
};

/// Radial kernel family with its shape parameter.
///
/// `epsilon` is ignored by the polyharmonic spline, which instead uses
/// `phs_k` to select phi(r) = r^(2k-1).
struct KernelSpec {
  KernelFamily family = KernelFamily::Gaussian;
  double epsilon = 1.0;
  int phs_k = 2;

  static KernelSpec gaussian(double eps) { return {KernelFamily::Gaussian, eps, 2}; }
  static KernelSpec phs(int k) { return {KernelFamily::PolyharmonicSpline, 1.0, k}; }

  /// Throws InputError if epsilon/k are out of range.
  void validate() const;
};

std::string family_name(KernelFamily family);
/// Parses the short CLI names: ga, mq, imq, iq, phs.
KernelFamily parse_family(const std::string& name);

/// Monomial exponent of the modified (monomial-scaled) basis, n >= 1.
struct MonomialScaling {
  int n = 4;
  void validate() const;
};

struct KernelGrad {
  double value;
  Point grad;
};

struct KernelDerivs {
  double value;
  Point grad;
  double hxx, hxy, hyy;
};

/// phi(r). Throws InputError on negative or non-finite r.
double kernel_value(const KernelSpec& spec, double r);

/// phi(|dx|) and its gradient with respect to the first argument, i.e.
/// d/dx phi(|x - c|) with dx = x - c. Never touches second derivatives.
KernelGrad kernel_first_derivs(const KernelSpec& spec, Point dx);

/// Value, gradient and Hessian of phi(|dx|) in closed form. The removable
/// singularity at dx = 0 is handled per family; PHS with k = 1 has no
/// derivative at the origin and throws DomainError there.
KernelDerivs kernel_cartesian_derivs(const KernelSpec& spec, Point dx);

namespace detail {
/// Number of Hessian evaluations performed on the calling thread.
std::uint64_t hessian_eval_count();
void reset_hessian_eval_count();
}  // namespace detail

// Monomial-scaled basis attached to one center:
//   psi_w     = (x-xc)^n (y-yc)^n phi
//   psi_alpha = (x-xc)^2n phi
//   psi_beta  = (y-yc)^2n phi
struct ModifiedValues {
  double psi_w, psi_alpha, psi_beta;
};

struct ModifiedGrads {
  Point psi_w, psi_alpha, psi_beta;
};

struct ModifiedBasis {
  ModifiedValues values;
  ModifiedGrads grads;
};

ModifiedValues modified_basis_values(const KernelSpec& spec, MonomialScaling scaling,
                                     Point x, Point center);

/// Product-rule gradients of the modified basis. Built on
/// kernel_first_derivs only.
ModifiedGrads modified_basis_grads(const KernelSpec& spec, MonomialScaling scaling,
                                   Point x, Point center);

/// Values and gradients together, sharing one kernel evaluation.
ModifiedBasis modified_basis(const KernelSpec& spec, MonomialScaling scaling, Point x,
                             Point center);

/// 1D diagnostic form (x - x0)^n phi(|x - x0|).
double modified_basis_value_1d(const KernelSpec& spec, MonomialScaling scaling,
                               double x, double center);
double modified_basis_deriv_1d(const KernelSpec& spec, MonomialScaling scaling,
                               double x, double center);

}  // namespace mhrbf
