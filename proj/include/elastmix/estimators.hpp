#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "elastmix/assembly.hpp"
#include "elastmix/basis.hpp"
#include "elastmix/solver.hpp"

namespace elastmix {

enum class EstimatorKind { Residual, Elasticity, ModifiedElasticity, Stokes, Poisson };

std::string_view to_string(EstimatorKind kind);
EstimatorKind estimator_from_string(std::string_view name);

/// Residuals of a discrete solution sampled where the estimators need them.
///
/// Element residuals are stored at the points of `assembly_rule()`, edge
/// residuals at the points of `edge_rule()` ordered from `Edge::vertices[0]`
/// to `Edge::vertices[1]`.
struct ResidualData {
  Discretization disc;
  MaterialParams material;
  /// f_h + div(2 mu eps(u_h)) - grad p_h.
  std::vector<std::vector<Vec2>> interior;
  /// div u_h + p_h / lambda.
  std::vector<std::vector<double>> divergence;
  /// Stress-jump residual: half the jump of sigma_h n across interior edges,
  /// the full traction sigma_h n on Neumann edges, zero on Dirichlet edges,
  /// with sigma_h = 2 mu eps(u_h) - p_h I.
  std::vector<std::vector<Vec2>> edge;
  /// Data oscillation per element.
  std::vector<double> theta_sq;
};

ResidualData compute_residual_data(const MixedSolution& sol, const LoadProjection& load);

/// (sigma_h|first - sigma_h|second) n_E at the edge quadrature points, where
/// `first` and `second` are the two elements sharing interior edge `edge`.
std::vector<Vec2> edge_traction_difference(const MixedSolution& sol, int edge, int first, int second);

/// Per-element breakdown of an estimate.
///
/// For the residual estimator `components` holds (eta_RK^2, eta_EK^2,
/// eta_JK^2). For local-problem estimators it holds (displacement energy, 0,
/// pressure part).
struct EstimatorReport {
  EstimatorKind kind = EstimatorKind::Residual;
  std::vector<double> eta_sq;
  std::vector<std::array<double, 3>> components;
  std::vector<double> theta_sq;
  double eta = 0.0;
  double theta = 0.0;
};

/// Correction spaces for the element problems: scalar displacement bubbles
/// (per component) and the full biquadratic pressure space.
struct LocalProblemOptions {
  BasisFamily displacement_space = BasisFamily::Q3Hier;
};

EstimatorReport residual_estimator(const ResidualData& data);

EstimatorReport poisson_local_estimator(const ResidualData& data, const LocalProblemOptions& opts = {});
EstimatorReport stokes_local_estimator(const ResidualData& data, const LocalProblemOptions& opts = {});

enum class ElasticityVariant { Full, Modified };
EstimatorReport elasticity_local_estimator(const ResidualData& data, ElasticityVariant variant,
                                           const LocalProblemOptions& opts = {});

EstimatorReport compute_estimator(EstimatorKind kind, const ResidualData& data, const LocalProblemOptions& opts = {});

/// Solution of one element problem. `displacement` holds component 0 of all
/// bubbles followed by component 1; `pressure` holds Q2 coefficients (empty
/// for the Poisson problem, whose pressure part is closed-form).
struct LocalCorrection {
  Eigen::VectorXd displacement;
  Eigen::VectorXd pressure;
  double displacement_energy = 0.0;
  double pressure_energy = 0.0;
};

LocalCorrection solve_local_problem(EstimatorKind kind, const ResidualData& data, int element,
                                    const LocalProblemOptions& opts = {});

/// Element matrices of the local problems on an hx x hy rectangle.
struct LocalMatrices {
  Eigen::MatrixXd laplace;   // n x n scalar (grad, grad)
  Eigen::MatrixXd strain;    // 2n x 2n, (eps, eps) without the 2 mu factor
  Eigen::MatrixXd div;       // 9 x 2n, (q, div v)
  Eigen::MatrixXd mass;      // 9 x 9 pressure mass
};

LocalMatrices local_matrices(double hx, double hy, BasisFamily displacement_space);

/// Matrix of the element Stokes problem, with unknowns ordered
/// (displacement, pressure).
Eigen::MatrixXd local_stokes_matrix(double hx, double hy, const MaterialParams& mat, BasisFamily displacement_space);

}  // namespace elastmix
