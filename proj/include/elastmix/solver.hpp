#pragma once

#include <array>

#include <Eigen/Dense>

#include "elastmix/assembly.hpp"

namespace elastmix {

/// Discrete displacement and pressure with the data they were computed on.
struct MixedSolution {
  Discretization disc;
  MaterialParams material;
  /// Indexed by DofMap::displacement_dof.
  Eigen::VectorXd displacement;
  Eigen::VectorXd pressure;
  /// ||rhs - K x|| / ||rhs|| of the global solve.
  double relative_residual = 0.0;
};

/// Sparse direct solve of the eliminated saddle-point system. Throws
/// `Error(SolverFailure)` when the factorization fails or the relative
/// residual exceeds 1e-10. For lambda_inv = 0 without Neumann edges the
/// pressure is returned with zero mean.
MixedSolution solve_saddle(const MixedSystem& system);

/// Name of the factorization backend compiled in.
const char* solver_backend();

using Mat2 = std::array<std::array<double, 2>, 2>;

/// Pointwise values of a discrete solution on one element. grad_u[i][j] is
/// d u_i / d x_j.
struct SolutionPoint {
  Point x;
  Vec2 u{};
  Mat2 grad_u{};
  Mat2 strain{};
  double div_u = 0.0;
  double p = 0.0;
  Vec2 grad_p{};
};

SolutionPoint evaluate_solution(const MixedSolution& sol, int element, double xi, double eta);

/// div(2 mu eps(u_h)) on one element, from exact second derivatives.
Vec2 stress_divergence(const MixedSolution& sol, int element, double xi, double eta);

/// Element coefficient gathers.
std::array<double, 18> element_displacement_coeffs(const MixedSolution& sol, int element);
std::vector<double> element_pressure_coeffs(const MixedSolution& sol, int element);

}  // namespace elastmix
