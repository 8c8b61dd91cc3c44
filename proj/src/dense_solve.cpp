#include "mhrbf/dense_solve.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "mhrbf/point.hpp"

namespace mhrbf {

namespace {

constexpr double kPivotFactor = 1e3;

Eigen::VectorXd zero_nonfinite(Eigen::VectorXd v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i])) v[i] = 0.0;
  return v;
}

}  // namespace

void DenseSystem::validate() const {
  if (matrix.rows() < 1 || matrix.rows() != matrix.cols())
    throw InputError("system matrix must be square and non-empty");
  if (rhs.size() != matrix.rows()) throw InputError("rhs length does not match the matrix");
  if (!matrix.allFinite() || !rhs.allFinite()) throw InputError("system has non-finite entries");
}

double norm1(const Eigen::MatrixXd& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

LuFactorization::LuFactorization(const Eigen::MatrixXd& a) : lu_(a) {
  const Eigen::Index n = lu_.rows();
  if (n != lu_.cols()) throw InputError("LU needs a square matrix");
  perm_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) perm_[i] = i;

  const double threshold =
      kPivotFactor * std::numeric_limits<double>::epsilon() * lu_.cwiseAbs().maxCoeff();

  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = 0;
    const double pivot_abs = lu_.col(k).tail(n - k).cwiseAbs().maxCoeff(&p);
    p += k;
    if (pivot_abs == 0.0) {
      degenerate_ = true;
      near_singular_ = true;
      continue;
    }
    if (pivot_abs < threshold) near_singular_ = true;
    if (p != k) {
      lu_.row(k).swap(lu_.row(p));
      std::swap(perm_[k], perm_[p]);
    }
    const Eigen::Index rest = n - k - 1;
    if (rest == 0) break;
    lu_.col(k).tail(rest) /= lu_(k, k);
    lu_.bottomRightCorner(rest, rest).noalias() -=
        lu_.col(k).tail(rest) * lu_.row(k).tail(rest);
  }
}

Eigen::VectorXd LuFactorization::solve(const Eigen::VectorXd& b) const {
  const Eigen::Index n = size();
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = b[perm_[i]];
  lu_.triangularView<Eigen::UnitLower>().solveInPlace(x);
  lu_.triangularView<Eigen::Upper>().solveInPlace(x);
  return degenerate_ ? zero_nonfinite(std::move(x)) : x;
}

Eigen::VectorXd LuFactorization::solve_transposed(const Eigen::VectorXd& b) const {
  // A^T = U^T L^T P, so solve U^T z = b, L^T w = z, x = P^T w.
  const Eigen::Index n = size();
  Eigen::VectorXd w = b;
  lu_.triangularView<Eigen::Upper>().transpose().solveInPlace(w);
  lu_.triangularView<Eigen::UnitLower>().transpose().solveInPlace(w);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[perm_[i]] = w[i];
  return degenerate_ ? zero_nonfinite(std::move(x)) : x;
}

// Block 1-norm estimator of Higham & Tisseur with two probe columns; the
// second column is a fixed pseudo-random sign pattern so results are
// reproducible.
double LuFactorization::inverse_norm1_estimate() const {
  if (degenerate_) return std::numeric_limits<double>::infinity();
  const Eigen::Index n = size();
  if (n == 1) return 1.0 / std::abs(lu_(0, 0));
  constexpr int t = 2;
  const double inv_n = 1.0 / static_cast<double>(n);

  auto solve_cols = [&](const Eigen::MatrixXd& x, bool transposed) {
    Eigen::MatrixXd y(n, x.cols());
    for (Eigen::Index c = 0; c < x.cols(); ++c)
      y.col(c) = transposed ? solve_transposed(x.col(c)) : solve(x.col(c));
    return y;
  };
  auto signs = [](const Eigen::MatrixXd& y) {
    return y.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; }).eval();
  };

  Eigen::MatrixXd x(n, t);
  x.col(0).setConstant(inv_n);
  std::mt19937_64 rng(0x5eed);
  for (Eigen::Index i = 0; i < n; ++i) x(i, 1) = (rng() & 1U ? 1.0 : -1.0) * inv_n;
  if (std::abs(x.col(1).sum()) == 1.0) x(0, 1) = -x(0, 1);  // keep the columns independent

  std::vector<char> used(static_cast<std::size_t>(n), 0);
  Eigen::MatrixXd s_old = Eigen::MatrixXd::Zero(n, t);
  double est = 0.0, est_old = 0.0;
  Eigen::Index best_row = -1;
  for (int k = 1; k <= 5; ++k) {
    const Eigen::MatrixXd y = solve_cols(x, false);
    Eigen::Index best_col = 0;
    est = y.cwiseAbs().colwise().sum().maxCoeff(&best_col);
    if (k >= 2 && est <= est_old) {
      est = est_old;
      break;
    }
    est_old = est;
    const Eigen::MatrixXd s = signs(y);
    // every new sign vector parallel to an old one: nothing new to learn
    bool all_parallel = k > 1;
    for (Eigen::Index c = 0; c < s.cols() && all_parallel; ++c) {
      bool par = false;
      for (Eigen::Index d = 0; d < s_old.cols(); ++d) par = par || std::abs(s.col(c).dot(s_old.col(d))) == static_cast<double>(n);
      all_parallel = par;
    }
    if (all_parallel) break;
    s_old = s;

    const Eigen::MatrixXd z = solve_cols(s, true);
    const Eigen::VectorXd h = z.cwiseAbs().rowwise().maxCoeff();
    const double hmax = h.maxCoeff();
    if (k >= 2 && best_row >= 0 && hmax == h[best_row]) break;
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return h[a] > h[b]; });
    std::vector<Eigen::Index> next;
    for (Eigen::Index r : order) {
      if (!used[static_cast<std::size_t>(r)]) next.push_back(r);
      if (static_cast<int>(next.size()) == t) break;
    }
    if (next.empty()) break;
    best_row = order[0];
    x = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(next.size()));
    for (std::size_t c = 0; c < next.size(); ++c) {
      x(next[c], static_cast<Eigen::Index>(c)) = 1.0;
      used[static_cast<std::size_t>(next[c])] = 1;
    }
  }

  // Higham's extra probe guards against the iteration stalling.
  Eigen::VectorXd alt(n);
  for (Eigen::Index i = 0; i < n; ++i)
    alt[i] = (i % 2 == 0 ? 1.0 : -1.0) * (1.0 + static_cast<double>(i) / static_cast<double>(n - 1));
  const double alt_est = 2.0 * solve(alt).lpNorm<1>() / (3.0 * static_cast<double>(n));
  return std::max(est, alt_est);
}

SolveReport lu_solve(const DenseSystem& system) {
  system.validate();
  const LuFactorization lu(system.matrix);

  SolveReport report;
  report.solution = lu.solve(system.rhs);
  report.singular_flag = lu.near_singular();
  report.degenerate = lu.degenerate();
  const double bnorm = system.rhs.lpNorm<Eigen::Infinity>();
  report.residual_inf = (system.matrix * report.solution - system.rhs).lpNorm<Eigen::Infinity>() /
                        std::max(1.0, bnorm);
  report.cond_estimate = lu.degenerate() ? std::numeric_limits<double>::infinity()
                                         : std::max(1.0, norm1(system.matrix) *
                                                             lu.inverse_norm1_estimate());
  return report;
}

double cond_estimate_1norm(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() < 1 || matrix.rows() != matrix.cols())
    throw InputError("condition estimate needs a square matrix");
  if (!matrix.allFinite()) throw InputError("matrix has non-finite entries");
  const LuFactorization lu(matrix);
  if (lu.degenerate()) return std::numeric_limits<double>::infinity();
  return std::max(1.0, norm1(matrix) * lu.inverse_norm1_estimate());
}

}  // namespace mhrbf
