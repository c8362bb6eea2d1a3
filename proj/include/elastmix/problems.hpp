#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "elastmix/assembly.hpp"
#include "elastmix/estimators.hpp"
#include "elastmix/mesh.hpp"
#include "elastmix/solver.hpp"

namespace elastmix {

/// Closed-form solution of a test problem for a given material.
struct ExactSolution {
  std::function<Vec2(const MaterialParams&, double x, double y)> u;
  std::function<Mat2(const MaterialParams&, double x, double y)> grad_u;
  std::function<double(const MaterialParams&, double x, double y)> p;
};

struct TestProblem {
  std::string id;
  std::string name;
  Rectangle domain;
  BoundaryPredicate boundary;
  /// The load may scale with the material (the analytic problem does).
  std::function<Vec2(const MaterialParams&, double x, double y)> load;
  VectorField dirichlet;
  std::optional<ExactSolution> exact;
  std::string notes;

  VectorField load_for(const MaterialParams& mat) const {
    return [f = load, mat](double x, double y) { return f(mat, x, y); };
  }
};

/// The analytic problem (p1), the nonsmooth-pressure problem (p2) and the
/// mixed boundary condition problem (p3).
const std::vector<TestProblem>& problem_catalog();
const TestProblem& find_problem(const std::string& id);

/// Energy norm of (u - u_h, p - p_h) by Gauss quadrature with
/// `points_per_dim` points per direction on every element.
double energy_error(const MixedSolution& sol, const ExactSolution& exact, int points_per_dim = 7);

/// eta / e. Throws for e <= 0.
double effectivity(const EstimatorReport& report, double error);
double effectivity(double eta, double error);

/// Uniform mesh of a problem's domain with element width 2^-level, tagged
/// with the problem's boundary partition.
Mesh problem_mesh(const TestProblem& problem, int level);

}  // namespace elastmix
