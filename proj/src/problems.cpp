#include "elastmix/problems.hpp"

#include <cmath>
#include <numbers>

#include "elastmix/error.hpp"
#include "elastmix/quadrature.hpp"
#include "elastmix/summation.hpp"

namespace elastmix {

namespace {

constexpr double kPi = std::numbers::pi;

TestProblem analytic_problem() {
  TestProblem p;
  p.id = "p1";
  p.name = "analytic solution";
  p.domain = {0.0, 1.0, 0.0, 1.0};
  p.boundary = all_dirichlet();
  p.load = [](const MaterialParams& m, double x, double y) -> Vec2 {
    const double c = 2.0 * m.mu * kPi * kPi * kPi;
    return {-c * std::cos(kPi * y) * std::sin(kPi * y) * (2.0 * std::cos(2.0 * kPi * x) - 1.0),
            c * std::cos(kPi * x) * std::sin(kPi * x) * (2.0 * std::cos(2.0 * kPi * y) - 1.0)};
  };
  p.dirichlet = [](double, double) -> Vec2 { return {0.0, 0.0}; };
  ExactSolution ex;
  ex.u = [](const MaterialParams&, double x, double y) -> Vec2 {
    const double sx = std::sin(kPi * x), sy = std::sin(kPi * y);
    return {kPi * std::cos(kPi * y) * sx * sx * sy, -kPi * std::cos(kPi * x) * sy * sy * sx};
  };
  ex.grad_u = [](const MaterialParams&, double x, double y) -> Mat2 {
    const double pi2 = kPi * kPi;
    const double sx = std::sin(kPi * x), sy = std::sin(kPi * y);
    const double s2 = 0.5 * pi2 * std::sin(2.0 * kPi * x) * std::sin(2.0 * kPi * y);
    return {{{s2, pi2 * sx * sx * std::cos(2.0 * kPi * y)}, {-pi2 * sy * sy * std::cos(2.0 * kPi * x), -s2}}};
  };
  ex.p = [](const MaterialParams&, double, double) { return 0.0; };
  p.exact = ex;
  p.notes = "smooth; divergence-free displacement, zero pressure";
  return p;
}

TestProblem nonsmooth_problem() {
  TestProblem p;
  p.id = "p2";
  p.name = "nonsmooth pressure";
  p.domain = {0.0, 1.0, 0.0, 1.0};
  p.boundary = all_dirichlet();
  p.load = [](const MaterialParams&, double, double) -> Vec2 { return {0.0, 0.0}; };
  p.dirichlet = [](double x, double y) -> Vec2 {
    if (y == 1.0) {
      const double s = std::sin(kPi * x);
      return {s * s, 0.0};
    }
    return {0.0, 0.0};
  };
  p.notes = "H2 but not H3; pressure singular at the top corners";
  return p;
}

TestProblem mixed_bc_problem() {
  TestProblem p;
  p.id = "p3";
  p.name = "mixed boundary conditions";
  p.domain = {-1.0, 1.0, -1.0, 1.0};
  p.boundary = [](Point mid, Point) { return mid.x == 1.0 ? EdgeTag::Neumann : EdgeTag::Dirichlet; };
  p.load = [](const MaterialParams&, double, double) -> Vec2 { return {1.0, 1.0}; };
  p.dirichlet = [](double, double) -> Vec2 { return {0.0, 0.0}; };
  p.notes = "traction-free right edge; strong singularity at (1,1)";
  return p;
}

}  // namespace

const std::vector<TestProblem>& problem_catalog() {
  static const std::vector<TestProblem> catalog = {analytic_problem(), nonsmooth_problem(), mixed_bc_problem()};
  return catalog;
}

const TestProblem& find_problem(const std::string& id) {
  for (const TestProblem& p : problem_catalog())
    if (p.id == id) return p;
  fail(ErrorCode::InvalidArgument, "unknown problem '" + id + "'");
}

double energy_error(const MixedSolution& sol, const ExactSolution& exact, int points_per_dim) {
  const Mesh& mesh = *sol.disc.mesh;
  const MaterialParams& mat = sol.material;
  const QuadratureRule rule = gauss_rule(points_per_dim);
  CompensatedSum grad_part, p_part;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Element& k = mesh.element(e);
    const double jac = 0.25 * k.hx * k.hy;
    for (int q = 0; q < rule.size(); ++q) {
      const SolutionPoint sp = evaluate_solution(sol, e, rule.xi[q], rule.eta[q]);
      const Mat2 g = exact.grad_u(mat, sp.x.x, sp.x.y);
      double s = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const double d = g[i][j] - sp.grad_u[i][j];
          s += d * d;
        }
      const double dp = exact.p(mat, sp.x.x, sp.x.y) - sp.p;
      const double w = rule.weights[q] * jac;
      grad_part.add(w * s);
      p_part.add(w * dp * dp);
    }
  }
  return std::sqrt(mat.two_mu() * grad_part.value() + mat.pressure_norm_weight() * p_part.value());
}

double effectivity(double eta, double error) {
  if (!(error > 0.0)) fail(ErrorCode::InvalidArgument, "effectivity is undefined for a zero error");
  return eta / error;
}

double effectivity(const EstimatorReport& report, double error) { return effectivity(report.eta, error); }

Mesh problem_mesh(const TestProblem& problem, int level) {
  require(level >= 0 && level <= 12, "mesh level out of range");
  const double h = std::ldexp(1.0, -level);
  const int nx = static_cast<int>(std::lround(problem.domain.width() / h));
  const int ny = static_cast<int>(std::lround(problem.domain.height() / h));
  return tag_boundaries(build_rect_mesh(problem.domain, nx, ny), problem.boundary);
}

}  // namespace elastmix
