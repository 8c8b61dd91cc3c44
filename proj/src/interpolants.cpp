#include "mhrbf/interpolants.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "mhrbf/csv.hpp"

namespace mhrbf {

namespace {

void check_distinct(const std::vector<Point>& nodes) {
  double extent = 0.0;
  for (Point p : nodes) {
    if (!p.finite()) throw AssemblyError("node is not finite");
    extent = std::max(extent, p.norm());
  }
  const double tol = 1e-14 * std::max(extent, 1e-300);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (distance(nodes[i], nodes[j]) <= tol)
        throw AssemblyError("duplicate nodes " + std::to_string(j) + " and " + std::to_string(i));
}

void check_data(const std::vector<Point>& nodes, const HermiteData& data, bool hermite) {
  if (nodes.empty()) throw InputError("no data nodes");
  const auto n = nodes.size();
  if (data.f.size() != n) throw InputError("f has the wrong length");
  if (hermite && (data.fx.size() != n || data.fy.size() != n))
    throw InputError("gradient samples have the wrong length");
}

int poly_terms(const std::optional<PolyBasis>& poly) { return poly ? poly->term_count() : 0; }

// Polynomial columns/rows shared by the two Hermite systems: P, P_x, P_y in
// the last M columns and their transposes in the last M rows.
void fill_hermite_poly_blocks(Eigen::MatrixXd& a, const std::vector<Point>& nodes,
                              const PolyBasis& poly) {
  const Eigen::Index n = static_cast<Eigen::Index>(nodes.size());
  const int m = poly.term_count();
  std::vector<double> pv(m);
  std::vector<Point> pg(m);
  for (Eigen::Index p = 0; p < n; ++p) {
    poly.eval_into(nodes[p], pv.data());
    poly.grad_into(nodes[p], pg.data());
    for (int k = 0; k < m; ++k) {
      const Eigen::Index col = 3 * n + k;
      a(p, col) = pv[k];
      a(n + p, col) = pg[k].x;
      a(2 * n + p, col) = pg[k].y;
      a(col, p) = pv[k];
      a(col, n + p) = pg[k].x;
      a(col, 2 * n + p) = pg[k].y;
    }
  }
}

Eigen::VectorXd hermite_rhs(const HermiteData& data, int m) {
  const auto n = static_cast<Eigen::Index>(data.f.size());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(3 * n + m);
  for (Eigen::Index i = 0; i < n; ++i) {
    b[i] = data.f[i];
    b[n + i] = data.fx[i];
    b[2 * n + i] = data.fy[i];
  }
  return b;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::Rbf: return "rbf";
    case Method::RbfPoly: return "rbf_poly";
    case Method::Hrbf: return "hrbf";
    case Method::Mhrbf: return "mhrbf";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "rbf") return Method::Rbf;
  if (name == "rbf_poly") return Method::RbfPoly;
  if (name == "hrbf") return Method::Hrbf;
  if (name == "mhrbf") return Method::Mhrbf;
  throw InputError("unknown method '" + name + "'");
}

HermiteData HermiteData::sample(const TestFunction& fn, const std::vector<Point>& nodes) {
  HermiteData d;
  d.f.reserve(nodes.size());
  d.fx.reserve(nodes.size());
  d.fy.reserve(nodes.size());
  for (Point p : nodes) {
    d.f.push_back(fn.value(p));
    const Point g = fn.gradient(p);
    d.fx.push_back(g.x);
    d.fy.push_back(g.y);
  }
  return d;
}

DenseSystem assemble_rbf(const std::vector<Point>& nodes, const std::vector<double>& f,
                         const KernelSpec& kernel, const std::optional<PolyBasis>& poly) {
  kernel.validate();
  if (nodes.empty() || f.size() != nodes.size()) throw InputError("f has the wrong length");
  check_distinct(nodes);
  const auto n = static_cast<Eigen::Index>(nodes.size());
  const int m = poly_terms(poly);

  DenseSystem sys{Eigen::MatrixXd::Zero(n + m, n + m), Eigen::VectorXd::Zero(n + m)};
  for (Eigen::Index j = 0; j < n; ++j) {
    sys.matrix(j, j) = kernel_value(kernel, 0.0);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = kernel_value(kernel, distance(nodes[i], nodes[j]));
      sys.matrix(i, j) = v;
      sys.matrix(j, i) = v;
    }
    sys.rhs[j] = f[j];
  }
  if (poly) {
    std::vector<double> pv(m);
    for (Eigen::Index p = 0; p < n; ++p) {
      poly->eval_into(nodes[p], pv.data());
      for (int k = 0; k < m; ++k) {
        sys.matrix(p, n + k) = pv[k];
        sys.matrix(n + k, p) = pv[k];
      }
    }
  }
  return sys;
}

DenseSystem assemble_hrbf(const std::vector<Point>& nodes, const HermiteData& data,
                          const KernelSpec& kernel, const std::optional<PolyBasis>& poly) {
  kernel.validate();
  check_data(nodes, data, true);
  check_distinct(nodes);
  const auto n = static_cast<Eigen::Index>(nodes.size());
  const int m = poly_terms(poly);

  DenseSystem sys{Eigen::MatrixXd::Zero(3 * n + m, 3 * n + m), hermite_rhs(data, m)};
  auto& a = sys.matrix;
  // Row p applies (value, d/dx, d/dy) at x_p to the basis of center i.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index p = 0; p < n; ++p) {
      const KernelDerivs k = kernel_cartesian_derivs(kernel, nodes[p] - nodes[i]);
      a(p, i) = k.value;
      a(p, n + i) = -k.grad.x;
      a(p, 2 * n + i) = -k.grad.y;
      a(n + p, i) = k.grad.x;
      a(n + p, n + i) = -k.hxx;
      a(n + p, 2 * n + i) = -k.hxy;
      a(2 * n + p, i) = k.grad.y;
      a(2 * n + p, n + i) = -k.hxy;
      a(2 * n + p, 2 * n + i) = -k.hyy;
    }
  }
  if (poly) fill_hermite_poly_blocks(a, nodes, *poly);
  return sys;
}

DenseSystem assemble_mhrbf(const std::vector<Point>& nodes, const HermiteData& data,
                           const KernelSpec& kernel, MonomialScaling scaling,
                           const std::optional<PolyBasis>& poly) {
  kernel.validate();
  scaling.validate();
  check_data(nodes, data, true);
  check_distinct(nodes);
  const auto n = static_cast<Eigen::Index>(nodes.size());
  const int m = poly_terms(poly);

  DenseSystem sys{Eigen::MatrixXd::Zero(3 * n + m, 3 * n + m), hermite_rhs(data, m)};
  auto& a = sys.matrix;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index p = 0; p < n; ++p) {
      const ModifiedBasis b = modified_basis(kernel, scaling, nodes[p], nodes[i]);
      a(p, i) = b.values.psi_w;
      a(p, n + i) = b.values.psi_alpha;
      a(p, 2 * n + i) = b.values.psi_beta;
      a(n + p, i) = b.grads.psi_w.x;
      a(n + p, n + i) = b.grads.psi_alpha.x;
      a(n + p, 2 * n + i) = b.grads.psi_beta.x;
      a(2 * n + p, i) = b.grads.psi_w.y;
      a(2 * n + p, n + i) = b.grads.psi_alpha.y;
      a(2 * n + p, 2 * n + i) = b.grads.psi_beta.y;
    }
  }
  if (poly) fill_hermite_poly_blocks(a, nodes, *poly);
  return sys;
}

Interpolant fit(Method method, const std::vector<Point>& nodes, const HermiteData& data,
                const KernelSpec& kernel, MonomialScaling scaling,
                std::optional<int> poly_degree) {
  Interpolant out;
  out.method_ = method;
  out.kernel_ = kernel;
  out.scaling_ = scaling;
  out.centers_ = nodes;
  if (method == Method::RbfPoly && !poly_degree)
    throw InputError("rbf_poly needs a polynomial degree");
  if (method != Method::Rbf && poly_degree) out.poly_.emplace(*poly_degree);

  DenseSystem sys;
  switch (method) {
    case Method::Rbf:
    case Method::RbfPoly:
      check_data(nodes, data, false);
      sys = assemble_rbf(nodes, data.f, kernel, out.poly_);
      break;
    case Method::Hrbf: sys = assemble_hrbf(nodes, data, kernel, out.poly_); break;
    case Method::Mhrbf: sys = assemble_mhrbf(nodes, data, kernel, scaling, out.poly_); break;
  }

  out.unknowns_ = sys.size();
  out.report_ = lu_solve(sys);
  const auto n = static_cast<Eigen::Index>(nodes.size());
  const auto m = static_cast<Eigen::Index>(poly_terms(out.poly_));
  const Eigen::VectorXd& x = out.report_.solution;
  out.w_ = x.head(n);
  if (is_hermite(method)) {
    out.alpha_ = x.segment(n, n);
    out.beta_ = x.segment(2 * n, n);
  }
  out.lambda_ = x.tail(m);
  return out;
}

double Interpolant::eval(Point x) const {
  double s = 0.0;
  const auto n = static_cast<Eigen::Index>(centers_.size());
  switch (method_) {
    case Method::Rbf:
    case Method::RbfPoly:
      for (Eigen::Index i = 0; i < n; ++i) s += w_[i] * kernel_value(kernel_, distance(x, centers_[i]));
      break;
    case Method::Hrbf:
      for (Eigen::Index i = 0; i < n; ++i) {
        const KernelGrad k = kernel_first_derivs(kernel_, x - centers_[i]);
        s += w_[i] * k.value - alpha_[i] * k.grad.x - beta_[i] * k.grad.y;
      }
      break;
    case Method::Mhrbf:
      for (Eigen::Index i = 0; i < n; ++i) {
        const ModifiedValues v = modified_basis_values(kernel_, scaling_, x, centers_[i]);
        s += w_[i] * v.psi_w + alpha_[i] * v.psi_alpha + beta_[i] * v.psi_beta;
      }
      break;
  }
  if (poly_) {
    const auto pv = poly_->eval(x);
    for (std::size_t k = 0; k < pv.size(); ++k) s += lambda_[static_cast<Eigen::Index>(k)] * pv[k];
  }
  return s;
}

Point Interpolant::eval_grad(Point x) const {
  Point g{0.0, 0.0};
  const auto n = static_cast<Eigen::Index>(centers_.size());
  switch (method_) {
    case Method::Rbf:
    case Method::RbfPoly:
      for (Eigen::Index i = 0; i < n; ++i)
        g = g + w_[i] * kernel_first_derivs(kernel_, x - centers_[i]).grad;
      break;
    case Method::Hrbf:
      for (Eigen::Index i = 0; i < n; ++i) {
        const KernelDerivs k = kernel_cartesian_derivs(kernel_, x - centers_[i]);
        g.x += w_[i] * k.grad.x - alpha_[i] * k.hxx - beta_[i] * k.hxy;
        g.y += w_[i] * k.grad.y - alpha_[i] * k.hxy - beta_[i] * k.hyy;
      }
      break;
    case Method::Mhrbf:
      for (Eigen::Index i = 0; i < n; ++i) {
        const ModifiedGrads b = modified_basis_grads(kernel_, scaling_, x, centers_[i]);
        g = g + w_[i] * b.psi_w + alpha_[i] * b.psi_alpha + beta_[i] * b.psi_beta;
      }
      break;
  }
  if (poly_) {
    const auto pg = poly_->grad(x);
    for (std::size_t k = 0; k < pg.size(); ++k) g = g + lambda_[static_cast<Eigen::Index>(k)] * pg[k];
  }
  return g;
}

ErrorReport error_report(const Interpolant& interp, const std::vector<Point>& eval_nodes,
                         const TestFunction& truth) {
  if (eval_nodes.empty()) throw InputError("error_report needs at least one evaluation node");
  ErrorReport e;
  for (Point p : eval_nodes) {
    e.err_f = std::max(e.err_f, std::abs(interp.eval(p) - truth.value(p)));
    const Point g = interp.eval_grad(p);
    const Point t = truth.gradient(p);
    e.err_fx = std::max(e.err_fx, std::abs(g.x - t.x));
    e.err_fy = std::max(e.err_fy, std::abs(g.y - t.y));
  }
  return e;
}

void write_interpolant(std::ostream& os, const Interpolant& interp) {
  os << "# method=" << method_name(interp.method()) << '\n'
     << "# kernel=" << family_name(interp.kernel().family) << '\n'
     << "# eps=" << fmt_double(interp.kernel().epsilon) << '\n'
     << "# n=" << interp.scaling().n << '\n'
     << "# l=" << (interp.poly() ? std::to_string(interp.poly()->degree()) : "none") << '\n';
  os << "kind,index,x,y,w,alpha,beta\n";
  const bool hermite = is_hermite(interp.method());
  for (std::size_t i = 0; i < interp.centers().size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    os << "center," << i << ',' << fmt_double(interp.centers()[i].x) << ','
       << fmt_double(interp.centers()[i].y) << ',' << fmt_double(interp.w()[k]) << ','
       << (hermite ? fmt_double(interp.alpha()[k]) : "0") << ','
       << (hermite ? fmt_double(interp.beta()[k]) : "0") << '\n';
  }
  for (Eigen::Index k = 0; k < interp.lambda().size(); ++k)
    os << "lambda," << k << ",0,0," << fmt_double(interp.lambda()[k]) << ",0,0\n";
}

}  // namespace mhrbf
