#include "elastmix/solver.hpp"

#include <string>

#ifdef ELASTMIX_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#else
#include <Eigen/SparseLU>
#endif

#include "elastmix/basis.hpp"
#include "elastmix/error.hpp"

namespace elastmix {

const char* solver_backend() {
#ifdef ELASTMIX_HAVE_UMFPACK
  return "umfpack";
#else
  return "eigen-sparselu";
#endif
}

namespace {

void remove_pressure_mean(MixedSolution& sol) {
  const Mesh& mesh = *sol.disc.mesh;
  const DofMap& dofs = *sol.disc.dofs;
  double integral = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto pd = dofs.element_pressure(e);
    if (dofs.pair() == ElementPair::Q2Q1)
      integral += 0.25 * mesh.element(e).area() * (sol.pressure[pd[0]] + sol.pressure[pd[1]] + sol.pressure[pd[2]] + sol.pressure[pd[3]]);
    else
      integral += mesh.element(e).area() * sol.pressure[pd[0]];
  }
  const double mean = integral / mesh.domain().area();
  if (dofs.pair() == ElementPair::Q2Q1) {
    sol.pressure.array() -= mean;
  } else {
    for (int e = 0; e < mesh.num_elements(); ++e) sol.pressure[dofs.element_pressure(e)[0]] -= mean;
  }
}

}  // namespace

MixedSolution solve_saddle(const MixedSystem& system) {
  const DofMap& dofs = *system.disc.dofs;
  const int nu = dofs.num_displacement();
  const int n = static_cast<int>(system.matrix.rows());
  require(n == dofs.num_total() && system.rhs.size() == n, "system size does not match its dof map");

  MixedSolution sol;
  sol.disc = system.disc;
  sol.material = system.material;

  // Incompressible with Dirichlet data everywhere: the pressure is fixed only
  // up to a constant. Pin the first pressure dof, then shift to zero mean.
  const bool hydrostatic = system.material.lambda_inv == 0.0 && system.disc.mesh->count_edges(EdgeTag::Neumann) == 0 &&
                           dofs.num_pressure() > 0;
  SparseMatrix pinned;
  Eigen::VectorXd pinned_rhs;
  if (hydrostatic) {
    pinned = system.matrix;
    for (int col = 0; col < pinned.outerSize(); ++col)
      for (SparseMatrix::InnerIterator it(pinned, col); it; ++it)
        if (it.row() == nu || it.col() == nu) it.valueRef() = it.row() == it.col() ? 1.0 : 0.0;
    pinned.prune(0.0);
    pinned_rhs = system.rhs;
    pinned_rhs[nu] = 0.0;
  }
  const SparseMatrix& matrix = hydrostatic ? pinned : system.matrix;
  const Eigen::VectorXd& rhs = hydrostatic ? pinned_rhs : system.rhs;

  Eigen::VectorXd x;
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) {
    x = Eigen::VectorXd::Zero(n);
  } else {
#ifdef ELASTMIX_HAVE_UMFPACK
    Eigen::UmfPackLU<SparseMatrix> lu;
#else
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
#endif
    lu.compute(matrix);
    if (lu.info() != Eigen::Success)
      fail(ErrorCode::SolverFailure, "factorization of the saddle-point system failed (singular matrix?)");
    x = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !x.allFinite())
      fail(ErrorCode::SolverFailure, "saddle-point solve failed");
  }
  sol.relative_residual = rhs_norm == 0.0 ? 0.0 : (rhs - matrix * x).norm() / rhs_norm;
  if (!(sol.relative_residual <= 1e-10))
    fail(ErrorCode::SolverFailure,
         "saddle-point solve residual " + std::to_string(sol.relative_residual) + " exceeds 1e-10");

  sol.displacement = x.head(nu);
  sol.pressure = x.tail(n - nu);
  if (hydrostatic) remove_pressure_mean(sol);
  return sol;
}

std::array<double, 18> element_displacement_coeffs(const MixedSolution& sol, int element) {
  const auto dofs = sol.disc.dofs->element_displacement(element);
  std::array<double, 18> c{};
  for (int a = 0; a < 18; ++a) c[a] = sol.displacement[dofs[a]];
  return c;
}

std::vector<double> element_pressure_coeffs(const MixedSolution& sol, int element) {
  const auto dofs = sol.disc.dofs->element_pressure(element);
  std::vector<double> c(dofs.size());
  for (std::size_t a = 0; a < dofs.size(); ++a) c[a] = sol.pressure[dofs[a]];
  return c;
}

SolutionPoint evaluate_solution(const MixedSolution& sol, int element, double xi, double eta) {
  const Element& k = sol.disc.mesh->element(element);
  require(xi >= -1.0 && xi <= 1.0 && eta >= -1.0 && eta <= 1.0, "reference point outside [-1,1]^2");
  const BasisValues u = basis_eval(BasisFamily::Q2, xi, eta);
  const BasisValues p = basis_eval(pressure_family(sol.disc.dofs->pair()), xi, eta);
  const auto uc = element_displacement_coeffs(sol, element);
  const auto pc = element_pressure_coeffs(sol, element);
  const double sx = 2.0 / k.hx;
  const double sy = 2.0 / k.hy;

  SolutionPoint out;
  out.x = k.map(xi, eta);
  for (int c = 0; c < 2; ++c) {
    for (int a = 0; a < 9; ++a) {
      const double coef = uc[9 * c + a];
      out.u[c] += coef * u.value[a];
      out.grad_u[c][0] += coef * u.d_xi[a] * sx;
      out.grad_u[c][1] += coef * u.d_eta[a] * sy;
    }
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.strain[i][j] = 0.5 * (out.grad_u[i][j] + out.grad_u[j][i]);
  out.div_u = out.grad_u[0][0] + out.grad_u[1][1];
  for (std::size_t a = 0; a < pc.size(); ++a) {
    out.p += pc[a] * p.value[a];
    out.grad_p[0] += pc[a] * p.d_xi[a] * sx;
    out.grad_p[1] += pc[a] * p.d_eta[a] * sy;
  }
  return out;
}

Vec2 stress_divergence(const MixedSolution& sol, int element, double xi, double eta) {
  const Element& k = sol.disc.mesh->element(element);
  const BasisValues u = basis_eval(BasisFamily::Q2, xi, eta);
  const auto uc = element_displacement_coeffs(sol, element);
  const double sx = 2.0 / k.hx;
  const double sy = 2.0 / k.hy;
  // Second derivatives of each component.
  double hxx[2] = {0, 0}, hxy[2] = {0, 0}, hyy[2] = {0, 0};
  for (int c = 0; c < 2; ++c) {
    for (int a = 0; a < 9; ++a) {
      const double coef = uc[9 * c + a];
      hxx[c] += coef * u.d_xixi[a] * sx * sx;
      hxy[c] += coef * u.d_xieta[a] * sx * sy;
      hyy[c] += coef * u.d_etaeta[a] * sy * sy;
    }
  }
  // div(2 mu eps(u)) = mu (laplace u + grad div u)
  const double mu = sol.material.mu;
  return {mu * (2.0 * hxx[0] + hyy[0] + hxy[1]), mu * (hxx[1] + 2.0 * hyy[1] + hxy[0])};
}

}  // namespace elastmix
