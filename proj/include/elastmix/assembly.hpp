#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Sparse>

#include "elastmix/dofmap.hpp"
#include "elastmix/material.hpp"
#include "elastmix/mesh.hpp"

namespace elastmix {

using Vec2 = std::array<double, 2>;
/// Closed-form vector field of physical coordinates.
using VectorField = std::function<Vec2(double x, double y)>;

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Mesh and numbering shared by everything computed on one grid.
struct Discretization {
  std::shared_ptr<const Mesh> mesh;
  std::shared_ptr<const DofMap> dofs;
};

Discretization make_discretization(Mesh mesh, ElementPair pair);

/// Global saddle-point system [[A, B^T], [B, -C]] x = rhs with Dirichlet rows
/// eliminated symmetrically. Displacement unknowns come first.
struct MixedSystem {
  Discretization disc;
  MaterialParams material;

  /// Blocks before boundary conditions. B is (n_p x n_displacement).
  SparseMatrix a_block;
  SparseMatrix b_block;
  SparseMatrix c_block;
  /// Load vector f(v) before boundary conditions.
  Eigen::VectorXd load;

  /// Constrained-and-eliminated global matrix and right-hand side.
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
  /// Interpolated boundary values, zero on free dofs.
  Eigen::VectorXd boundary_values;
};

/// Element matrices on a rectangle of size hx x hy, exact for affine
/// rectangles (4x4 Gauss).
struct ElementMatrices {
  Eigen::MatrixXd a;  // 18 x 18
  Eigen::MatrixXd b;  // n_p x 18
  Eigen::MatrixXd c;  // n_p x n_p, includes the 1/lambda factor
};

ElementMatrices element_matrices(double hx, double hy, ElementPair pair, const MaterialParams& mat);

/// Assembles the mixed system. Essential data `g` is interpolated at the
/// Dirichlet Q2 nodes; the load integral uses 7x7 Gauss.
MixedSystem assemble_mixed_system(const Discretization& disc, const MaterialParams& mat,
                                  const VectorField& load, const VectorField& g);

/// Element-wise L2 projection of the load onto Q1, with data oscillation.
struct LoadProjection {
  /// Per element, Q1 coefficients: [component * 4 + vertex].
  std::vector<std::array<double, 8>> coeffs;
  /// rho_K^2 ||f - f_h||^2_{0,K}.
  std::vector<double> theta_sq;

  Vec2 eval(int element, double xi, double eta) const;
  double theta() const;
};

LoadProjection project_load(const Mesh& mesh, const VectorField& load, const MaterialParams& mat);

}  // namespace elastmix
