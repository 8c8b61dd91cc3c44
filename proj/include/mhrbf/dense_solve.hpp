#pragma once

#include <vector>

#include <Eigen/Dense>

namespace mhrbf {

struct DenseSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;

  Eigen::Index size() const { return matrix.rows(); }
  /// Throws InputError unless square, non-empty, conforming and finite.
  void validate() const;
};

struct SolveReport {
  Eigen::VectorXd solution;
  double residual_inf = 0.0;  ///< |Ax - b|_inf / max(1, |b|_inf)
  double cond_estimate = 1.0; ///< 1-norm estimate, +inf when degenerate
  bool singular_flag = false; ///< some pivot below 1e3 * eps * max|A|
  bool degenerate = false;    ///< an exactly zero pivot column was met
};

/// Partial-pivoting LU, P A = L U, stored compactly.
///
/// Small pivots are flagged, not rejected. A column that is entirely zero
/// below the diagonal is skipped and the factorization is marked degenerate;
/// solves then return zeros in place of non-finite components.
class LuFactorization {
 public:
  explicit LuFactorization(const Eigen::MatrixXd& a);

  Eigen::Index size() const { return lu_.rows(); }
  bool near_singular() const { return near_singular_; }
  bool degenerate() const { return degenerate_; }

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  /// Solves A^T x = b.
  Eigen::VectorXd solve_transposed(const Eigen::VectorXd& b) const;

  /// Hager/Higham estimate of |A^-1|_1 using a handful of solves.
  double inverse_norm1_estimate() const;

 private:
  Eigen::MatrixXd lu_;
  std::vector<Eigen::Index> perm_;  ///< row i of PA is row perm_[i] of A
  bool near_singular_ = false;
  bool degenerate_ = false;
};

double norm1(const Eigen::MatrixXd& a);

SolveReport lu_solve(const DenseSystem& system);

/// |A|_1 * est(|A^-1|_1); +inf if the factorization is degenerate.
double cond_estimate_1norm(const Eigen::MatrixXd& matrix);

}  // namespace mhrbf
