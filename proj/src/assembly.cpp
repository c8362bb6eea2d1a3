#include "elastmix/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "elastmix/basis.hpp"
#include "elastmix/error.hpp"
#include "elastmix/quadrature.hpp"
#include "elastmix/summation.hpp"

namespace elastmix {

Discretization make_discretization(Mesh mesh, ElementPair pair) {
  auto m = std::make_shared<const Mesh>(std::move(mesh));
  auto d = std::make_shared<const DofMap>(*m, pair);
  return {m, d};
}

ElementMatrices element_matrices(double hx, double hy, ElementPair pair, const MaterialParams& mat) {
  const QuadratureRule& rule = assembly_rule();
  static const BasisTable q2 = tabulate(BasisFamily::Q2, assembly_rule().xi, assembly_rule().eta);
  const BasisTable pt = tabulate(pressure_family(pair), rule.xi, rule.eta);
  const int np = basis_size(pressure_family(pair));

  const double jac = 0.25 * hx * hy;
  const double sx = 2.0 / hx;
  const double sy = 2.0 / hy;

  ElementMatrices out{Eigen::MatrixXd::Zero(18, 18), Eigen::MatrixXd::Zero(np, 18), Eigen::MatrixXd::Zero(np, np)};
  for (int k = 0; k < rule.size(); ++k) {
    const double w = rule.weights[k] * jac;
    const BasisValues& u = q2.at[k];
    const BasisValues& p = pt.at[k];
    for (int a = 0; a < 9; ++a) {
      const double ax = u.d_xi[a] * sx;
      const double ay = u.d_eta[a] * sy;
      for (int b = 0; b < 9; ++b) {
        const double bx = u.d_xi[b] * sx;
        const double by = u.d_eta[b] * sy;
        // 2 mu eps(u):eps(v) split by components.
        out.a(a, b) += w * mat.two_mu() * (ax * bx + 0.5 * ay * by);
        out.a(9 + a, 9 + b) += w * mat.two_mu() * (ay * by + 0.5 * ax * bx);
        out.a(a, 9 + b) += w * mat.two_mu() * 0.5 * ay * bx;
        out.a(9 + a, b) += w * mat.two_mu() * 0.5 * ax * by;
      }
      for (int q = 0; q < np; ++q) {
        out.b(q, a) -= w * p.value[q] * ax;
        out.b(q, 9 + a) -= w * p.value[q] * ay;
      }
    }
    for (int q = 0; q < np; ++q)
      for (int r = 0; r < np; ++r) out.c(q, r) += w * mat.lambda_inv * p.value[q] * p.value[r];
  }
  return out;
}

MixedSystem assemble_mixed_system(const Discretization& disc, const MaterialParams& mat,
                                  const VectorField& load, const VectorField& g) {
  require(disc.mesh && disc.dofs, "discretization is incomplete");
  const Mesh& mesh = *disc.mesh;
  const DofMap& dofs = *disc.dofs;
  require(dofs.num_elements() == mesh.num_elements(), "dof map does not match mesh");

  const int nu = dofs.num_displacement();
  const int np = dofs.num_pressure();
  const int n = nu + np;

  MixedSystem sys;
  sys.disc = disc;
  sys.material = mat;
  sys.load = Eigen::VectorXd::Zero(nu);

  const QuadratureRule& drule = data_rule();
  static const BasisTable q2_data = tabulate(BasisFamily::Q2, data_rule().xi, data_rule().eta);

  std::vector<Eigen::Triplet<double>> ta, tb, tc;
  ta.reserve(static_cast<std::size_t>(mesh.num_elements()) * 18 * 18);
  tb.reserve(static_cast<std::size_t>(mesh.num_elements()) * 18 * dofs.pressure_per_element());
  tc.reserve(static_cast<std::size_t>(mesh.num_elements()) * dofs.pressure_per_element() * dofs.pressure_per_element());

  // Uniform grids reuse one set of element matrices.
  double cached_hx = -1.0, cached_hy = -1.0;
  ElementMatrices em;

  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Element& k = mesh.element(e);
    if (k.hx != cached_hx || k.hy != cached_hy) {
      em = element_matrices(k.hx, k.hy, dofs.pair(), mat);
      cached_hx = k.hx;
      cached_hy = k.hy;
    }
    const auto ud = dofs.element_displacement(e);
    const auto pd = dofs.element_pressure(e);
    for (int a = 0; a < 18; ++a)
      for (int b = 0; b < 18; ++b) ta.emplace_back(ud[a], ud[b], em.a(a, b));
    for (std::size_t q = 0; q < pd.size(); ++q) {
      for (int b = 0; b < 18; ++b) tb.emplace_back(pd[q], ud[b], em.b(static_cast<int>(q), b));
      for (std::size_t r = 0; r < pd.size(); ++r)
        tc.emplace_back(pd[q], pd[r], em.c(static_cast<int>(q), static_cast<int>(r)));
    }

    const double jac = 0.25 * k.hx * k.hy;
    for (int q = 0; q < drule.size(); ++q) {
      const Point x = k.map(drule.xi[q], drule.eta[q]);
      const Vec2 f = load(x.x, x.y);
      if (!std::isfinite(f[0]) || !std::isfinite(f[1]))
        fail(ErrorCode::InvalidArgument, "load evaluates to a non-finite value in element " + std::to_string(e));
      const double w = drule.weights[q] * jac;
      const BasisValues& phi = q2_data.at[q];
      for (int a = 0; a < 9; ++a) {
        sys.load[ud[a]] += w * f[0] * phi.value[a];
        sys.load[ud[9 + a]] += w * f[1] * phi.value[a];
      }
    }
  }

  sys.a_block.resize(nu, nu);
  sys.a_block.setFromTriplets(ta.begin(), ta.end());
  sys.b_block.resize(np, nu);
  sys.b_block.setFromTriplets(tb.begin(), tb.end());
  sys.c_block.resize(np, np);
  sys.c_block.setFromTriplets(tc.begin(), tc.end());

  sys.boundary_values = Eigen::VectorXd::Zero(nu);
  for (int node = 0; node < dofs.num_nodes(); ++node) {
    if (!dofs.node_constrained(node)) continue;
    const Point& x = dofs.node(node);
    const Vec2 gv = g(x.x, x.y);
    if (!std::isfinite(gv[0]) || !std::isfinite(gv[1]))
      fail(ErrorCode::InvalidArgument, "boundary data evaluates to a non-finite value");
    sys.boundary_values[dofs.displacement_dof(node, 0)] = gv[0];
    sys.boundary_values[dofs.displacement_dof(node, 1)] = gv[1];
  }

  // Symmetric elimination of the constrained rows and columns.
  const Eigen::VectorXd a_g = sys.a_block * sys.boundary_values;
  const Eigen::VectorXd b_g = sys.b_block * sys.boundary_values;
  sys.rhs.resize(n);
  for (int i = 0; i < nu; ++i)
    sys.rhs[i] = dofs.dof_constrained(i) ? sys.boundary_values[i] : sys.load[i] - a_g[i];
  for (int q = 0; q < np; ++q) sys.rhs[nu + q] = -b_g[q];

  std::vector<Eigen::Triplet<double>> tk;
  tk.reserve(static_cast<std::size_t>(sys.a_block.nonZeros() + 2 * sys.b_block.nonZeros() + sys.c_block.nonZeros() + nu));
  for (int col = 0; col < sys.a_block.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(sys.a_block, col); it; ++it) {
      if (dofs.dof_constrained(static_cast<int>(it.row())) || dofs.dof_constrained(static_cast<int>(it.col()))) continue;
      tk.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    }
  }
  for (int col = 0; col < sys.b_block.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(sys.b_block, col); it; ++it) {
      if (dofs.dof_constrained(static_cast<int>(it.col()))) continue;
      tk.emplace_back(nu + static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
      tk.emplace_back(static_cast<int>(it.col()), nu + static_cast<int>(it.row()), it.value());
    }
  }
  for (int col = 0; col < sys.c_block.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(sys.c_block, col); it; ++it)
      tk.emplace_back(nu + static_cast<int>(it.row()), nu + static_cast<int>(it.col()), -it.value());
  for (int i = 0; i < nu; ++i)
    if (dofs.dof_constrained(i)) tk.emplace_back(i, i, 1.0);

  sys.matrix.resize(n, n);
  sys.matrix.setFromTriplets(tk.begin(), tk.end());
  sys.matrix.makeCompressed();
  return sys;
}

Vec2 LoadProjection::eval(int element, double xi, double eta) const {
  const BasisValues phi = basis_eval(BasisFamily::Q1, xi, eta);
  const auto& c = coeffs.at(element);
  Vec2 out{0.0, 0.0};
  for (int a = 0; a < 4; ++a) {
    out[0] += c[a] * phi.value[a];
    out[1] += c[4 + a] * phi.value[a];
  }
  return out;
}

double LoadProjection::theta() const { return std::sqrt(compensated_sum(theta_sq)); }

LoadProjection project_load(const Mesh& mesh, const VectorField& load, const MaterialParams& mat) {
  const QuadratureRule& rule = data_rule();
  static const BasisTable q1 = tabulate(BasisFamily::Q1, data_rule().xi, data_rule().eta);

  LoadProjection out;
  out.coeffs.resize(mesh.num_elements());
  out.theta_sq.resize(mesh.num_elements());

  std::vector<Vec2> fvals(rule.size());
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Element& k = mesh.element(e);
    const double jac = 0.25 * k.hx * k.hy;
    Eigen::Matrix4d mass = Eigen::Matrix4d::Zero();
    Eigen::Matrix<double, 4, 2> rhs = Eigen::Matrix<double, 4, 2>::Zero();
    for (int q = 0; q < rule.size(); ++q) {
      const Point x = k.map(rule.xi[q], rule.eta[q]);
      fvals[q] = load(x.x, x.y);
      const double w = rule.weights[q] * jac;
      const auto& phi = q1.at[q].value;
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) mass(a, b) += w * phi[a] * phi[b];
        rhs(a, 0) += w * fvals[q][0] * phi[a];
        rhs(a, 1) += w * fvals[q][1] * phi[a];
      }
    }
    const Eigen::Matrix<double, 4, 2> c = mass.llt().solve(rhs);
    for (int a = 0; a < 4; ++a) {
      out.coeffs[e][a] = c(a, 0);
      out.coeffs[e][4 + a] = c(a, 1);
    }
    double err = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      const auto& phi = q1.at[q].value;
      double fh0 = 0.0, fh1 = 0.0;
      for (int a = 0; a < 4; ++a) {
        fh0 += c(a, 0) * phi[a];
        fh1 += c(a, 1) * phi[a];
      }
      const double d0 = fvals[q][0] - fh0;
      const double d1 = fvals[q][1] - fh1;
      err += rule.weights[q] * jac * (d0 * d0 + d1 * d1);
    }
    const double rho = mat.rho_k(std::max(k.hx, k.hy));
    out.theta_sq[e] = rho * rho * err;
  }
  return out;
}

}  // namespace elastmix
