#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mhrbf/dense_solve.hpp"
#include "mhrbf/kernels.hpp"
#include "mhrbf/polybasis.hpp"
#include "mhrbf/testfuncs.hpp"

namespace mhrbf {

enum class Method { Rbf, RbfPoly, Hrbf, Mhrbf };

std::string method_name(Method m);
Method parse_method(const std::string& name);
inline bool is_hermite(Method m) { return m == Method::Hrbf || m == Method::Mhrbf; }

/// Function values and gradient samples at the data nodes. fx/fy may be
/// left empty for the non-Hermite methods.
struct HermiteData {
  std::vector<double> f;
  std::vector<double> fx;
  std::vector<double> fy;

  static HermiteData sample(const TestFunction& fn, const std::vector<Point>& nodes);
};

// Collocation systems. Unknowns are ordered (w, alpha, beta, lambda) and
// rows (values, d/dx, d/dy, moment constraints). `poly` absent means no
// augmentation (M = 0), which differs from degree 0 (M = 1).
//
// Hermite basis attached to center c for HRBF:
//   phi(|x - c|),  d/dc_x phi(|x - c|),  d/dc_y phi(|x - c|)
// i.e. the gradient is taken with respect to the center, which makes the
// assembled matrix exactly symmetric. Evaluation-point gradients give the
// same interpolant with alpha and beta negated.
DenseSystem assemble_rbf(const std::vector<Point>& nodes, const std::vector<double>& f,
                         const KernelSpec& kernel, const std::optional<PolyBasis>& poly);

DenseSystem assemble_hrbf(const std::vector<Point>& nodes, const HermiteData& data,
                          const KernelSpec& kernel, const std::optional<PolyBasis>& poly);

/// Never evaluates second kernel derivatives; the matrix is not symmetric.
DenseSystem assemble_mhrbf(const std::vector<Point>& nodes, const HermiteData& data,
                           const KernelSpec& kernel, MonomialScaling scaling,
                           const std::optional<PolyBasis>& poly);

/// A fitted interpolant. Immutable after fitting.
class Interpolant {
 public:
  Method method() const { return method_; }
  const KernelSpec& kernel() const { return kernel_; }
  MonomialScaling scaling() const { return scaling_; }
  const std::optional<PolyBasis>& poly() const { return poly_; }
  const std::vector<Point>& centers() const { return centers_; }
  const Eigen::VectorXd& w() const { return w_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  const Eigen::VectorXd& beta() const { return beta_; }
  const Eigen::VectorXd& lambda() const { return lambda_; }
  const SolveReport& report() const { return report_; }
  /// Dimension of the solved system (N + M or 3N + M).
  Eigen::Index unknowns() const { return unknowns_; }

  double eval(Point x) const;
  Point eval_grad(Point x) const;

 private:
  friend Interpolant fit(Method, const std::vector<Point>&, const HermiteData&,
                         const KernelSpec&, MonomialScaling, std::optional<int>);

  Method method_ = Method::Rbf;
  KernelSpec kernel_;
  MonomialScaling scaling_;
  std::optional<PolyBasis> poly_;
  std::vector<Point> centers_;
  Eigen::VectorXd w_, alpha_, beta_, lambda_;
  SolveReport report_;
  Eigen::Index unknowns_ = 0;
};

/// Assemble, solve and unpack. Ill-conditioned or singular solves are
/// recorded in the report instead of raising. `poly_degree` is ignored for
/// Method::Rbf and required for Method::RbfPoly.
Interpolant fit(Method method, const std::vector<Point>& nodes, const HermiteData& data,
                const KernelSpec& kernel, MonomialScaling scaling = {},
                std::optional<int> poly_degree = std::nullopt);

struct ErrorReport {
  double err_f = 0.0;
  double err_fx = 0.0;
  double err_fy = 0.0;
};

/// L-infinity deviation of the interpolant and its gradient from `truth`.
ErrorReport error_report(const Interpolant& interp, const std::vector<Point>& eval_nodes,
                         const TestFunction& truth);

/// Debug dump: header lines then one `w,alpha,beta` row per center and one
/// `lambda` row per polynomial term. Not a stable format.
void write_interpolant(std::ostream& os, const Interpolant& interp);

}  // namespace mhrbf
