#pragma once

#include <string>

#include "elastmix/problems.hpp"

namespace support {

struct Solved {
  elastmix::MaterialParams mat;
  elastmix::MixedSolution sol;
};

inline Solved solve(const std::string& id, const elastmix::MaterialParams& mat, int level,
                    elastmix::ElementPair pair = elastmix::ElementPair::Q2Q1) {
  using namespace elastmix;
  const TestProblem& p = find_problem(id);
  const Discretization disc = make_discretization(problem_mesh(p, level), pair);
  return {mat, solve_saddle(assemble_mixed_system(disc, mat, p.load_for(mat), p.dirichlet))};
}

inline Solved solve(const std::string& id, double mu, double nu, int level,
                    elastmix::ElementPair pair = elastmix::ElementPair::Q2Q1) {
  return solve(id, elastmix::MaterialParams::from_poisson(mu, nu), level, pair);
}

inline elastmix::ResidualData residuals(const Solved& s, const elastmix::VectorField& load) {
  return elastmix::compute_residual_data(s.sol, elastmix::project_load(*s.sol.disc.mesh, load, s.mat));
}

inline elastmix::ResidualData residuals(const Solved& s, const std::string& id) {
  return residuals(s, elastmix::find_problem(id).load_for(s.mat));
}

}  // namespace support
