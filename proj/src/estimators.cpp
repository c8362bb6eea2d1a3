#include "elastmix/estimators.hpp"

#include <cmath>
#include <map>
#include <string>

#include "elastmix/error.hpp"
#include "elastmix/quadrature.hpp"
#include "elastmix/summation.hpp"

namespace elastmix {

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::Residual: return "residual";
    case EstimatorKind::Elasticity: return "elasticity";
    case EstimatorKind::ModifiedElasticity: return "modified";
    case EstimatorKind::Stokes: return "stokes";
    case EstimatorKind::Poisson: return "poisson";
  }
  return "unknown";
}

EstimatorKind estimator_from_string(std::string_view name) {
  for (EstimatorKind k : {EstimatorKind::Residual, EstimatorKind::Elasticity, EstimatorKind::ModifiedElasticity,
                          EstimatorKind::Stokes, EstimatorKind::Poisson})
    if (to_string(k) == name) return k;
  fail(ErrorCode::InvalidArgument, "unknown estimator '" + std::string(name) + "'");
}

namespace {
// Reference coordinates of edge parameter t on side `side`.
std::array<double, 2> side_point(int side, double t) {
  switch (side) {
    case kBottom: return {t, -1.0};
    case kRight: return {1.0, t};
    case kTop: return {t, 1.0};
    default: return {-1.0, t};
  }
}

int side_of(const Element& k, int edge) {
  for (int s = 0; s < 4; ++s)
    if (k.edges[s] == edge) return s;
  fail(ErrorCode::Internal, "edge " + std::to_string(edge) + " is not on the element");
}

Vec2 traction(const SolutionPoint& sp, double two_mu, const Point& n) {
  const double s00 = two_mu * sp.strain[0][0] - sp.p;
  const double s01 = two_mu * sp.strain[0][1];
  const double s11 = two_mu * sp.strain[1][1] - sp.p;
  return {s00 * n.x + s01 * n.y, s01 * n.x + s11 * n.y};
}

std::vector<Vec2> side_tractions(const MixedSolution& sol, int element, int edge, const Point& n) {
  const Element& k = sol.disc.mesh->element(element);
  const int side = side_of(k, edge);
  const GaussRule1D& g = edge_rule();
  std::vector<Vec2> out(g.size());
  for (int q = 0; q < g.size(); ++q) {
    const auto ref = side_point(side, g.points[q]);
    out[q] = traction(evaluate_solution(sol, element, ref[0], ref[1]), sol.material.two_mu(), n);
  }
  return out;
}

double finish_report(EstimatorReport& r) {
  r.eta = std::sqrt(compensated_sum(r.eta_sq));
  r.theta = std::sqrt(compensated_sum(r.theta_sq));
  return r.eta;
}

}  // namespace

std::vector<Vec2> edge_traction_difference(const MixedSolution& sol, int edge, int first, int second) {
  const Edge& e = sol.disc.mesh->edge(edge);
  require(!e.on_boundary(), "edge traction difference needs an interior edge");
  require((first == e.elements[0] && second == e.elements[1]) || (first == e.elements[1] && second == e.elements[0]),
          "elements do not share the edge");
  const auto a = side_tractions(sol, first, edge, e.normal);
  const auto b = side_tractions(sol, second, edge, e.normal);
  std::vector<Vec2> out(a.size());
  for (std::size_t q = 0; q < a.size(); ++q) out[q] = {a[q][0] - b[q][0], a[q][1] - b[q][1]};
  return out;
}

ResidualData compute_residual_data(const MixedSolution& sol, const LoadProjection& load) {
  const Mesh& mesh = *sol.disc.mesh;
  require(static_cast<int>(load.coeffs.size()) == mesh.num_elements(), "load projection does not match mesh");
  const QuadratureRule& rule = assembly_rule();
  const double lambda_inv = sol.material.lambda_inv;

  ResidualData data;
  data.disc = sol.disc;
  data.material = sol.material;
  data.theta_sq = load.theta_sq;
  data.interior.resize(mesh.num_elements());
  data.divergence.resize(mesh.num_elements());
  for (int e = 0; e < mesh.num_elements(); ++e) {
    auto& rk = data.interior[e];
    auto& rd = data.divergence[e];
    rk.resize(rule.size());
    rd.resize(rule.size());
    for (int q = 0; q < rule.size(); ++q) {
      const SolutionPoint sp = evaluate_solution(sol, e, rule.xi[q], rule.eta[q]);
      const Vec2 fh = load.eval(e, rule.xi[q], rule.eta[q]);
      const Vec2 ds = stress_divergence(sol, e, rule.xi[q], rule.eta[q]);
      rk[q] = {fh[0] + ds[0] - sp.grad_p[0], fh[1] + ds[1] - sp.grad_p[1]};
      rd[q] = sp.div_u + lambda_inv * sp.p;
    }
  }

  const int nq = edge_rule().size();
  data.edge.assign(mesh.num_edges(), std::vector<Vec2>(nq, Vec2{0.0, 0.0}));
  for (int id = 0; id < mesh.num_edges(); ++id) {
    const Edge& e = mesh.edge(id);
    auto& re = data.edge[id];
    if (e.tag == EdgeTag::Interior) {
      const auto diff = edge_traction_difference(sol, id, e.elements[0], e.elements[1]);
      for (int q = 0; q < nq; ++q) re[q] = {0.5 * diff[q][0], 0.5 * diff[q][1]};
    } else if (e.tag == EdgeTag::Neumann) {
      re = side_tractions(sol, e.elements[0], id, e.normal);
    }
  }
  return data;
}

EstimatorReport residual_estimator(const ResidualData& data) {
  const Mesh& mesh = *data.disc.mesh;
  const MaterialParams& mat = data.material;
  const QuadratureRule& rule = assembly_rule();
  const GaussRule1D& g = edge_rule();

  EstimatorReport r;
  r.kind = EstimatorKind::Residual;
  r.eta_sq.resize(mesh.num_elements());
  r.components.resize(mesh.num_elements());
  r.theta_sq = data.theta_sq;

  std::vector<double> edge_norm_sq(mesh.num_edges(), 0.0);
  for (int id = 0; id < mesh.num_edges(); ++id) {
    const Edge& e = mesh.edge(id);
    double s = 0.0;
    for (int q = 0; q < g.size(); ++q) {
      const Vec2& v = data.edge[id][q];
      s += g.weights[q] * (v[0] * v[0] + v[1] * v[1]);
    }
    edge_norm_sq[id] = 0.5 * e.length * s;
  }

  for (int el = 0; el < mesh.num_elements(); ++el) {
    const Element& k = mesh.element(el);
    const double jac = 0.25 * k.hx * k.hy;
    double rk = 0.0, rd = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2& v = data.interior[el][q];
      rk += rule.weights[q] * jac * (v[0] * v[0] + v[1] * v[1]);
      rd += rule.weights[q] * jac * data.divergence[el][q] * data.divergence[el][q];
    }
    const double rho_k = mat.rho_k(std::max(k.hx, k.hy));
    double edges = 0.0;
    for (int side = 0; side < 4; ++side) {
      const Edge& e = mesh.edge(k.edges[side]);
      edges += mat.rho_e(e.length) * edge_norm_sq[k.edges[side]];
    }
    r.components[el] = {rho_k * rho_k * rk, edges, mat.rho_d() * rd};
    r.eta_sq[el] = r.components[el][0] + r.components[el][1] + r.components[el][2];
  }
  finish_report(r);
  return r;
}

LocalMatrices local_matrices(double hx, double hy, BasisFamily displacement_space) {
  const QuadratureRule& rule = assembly_rule();
  const BasisTable psi = tabulate(displacement_space, rule.xi, rule.eta);
  static const BasisTable q2 = tabulate(BasisFamily::Q2Full, assembly_rule().xi, assembly_rule().eta);
  const int n = basis_size(displacement_space);
  const double jac = 0.25 * hx * hy;
  const double sx = 2.0 / hx;
  const double sy = 2.0 / hy;

  LocalMatrices m{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(2 * n, 2 * n), Eigen::MatrixXd::Zero(9, 2 * n),
                  Eigen::MatrixXd::Zero(9, 9)};
  for (int k = 0; k < rule.size(); ++k) {
    const double w = rule.weights[k] * jac;
    const BasisValues& b = psi.at[k];
    const BasisValues& q = q2.at[k];
    for (int i = 0; i < n; ++i) {
      const double ix = b.d_xi[i] * sx, iy = b.d_eta[i] * sy;
      for (int j = 0; j < n; ++j) {
        const double jx = b.d_xi[j] * sx, jy = b.d_eta[j] * sy;
        m.laplace(i, j) += w * (ix * jx + iy * jy);
        m.strain(i, j) += w * (ix * jx + 0.5 * iy * jy);
        m.strain(n + i, n + j) += w * (iy * jy + 0.5 * ix * jx);
        m.strain(i, n + j) += w * 0.5 * iy * jx;
        m.strain(n + i, j) += w * 0.5 * ix * jy;
      }
      for (int a = 0; a < 9; ++a) {
        m.div(a, i) += w * q.value[a] * ix;
        m.div(a, n + i) += w * q.value[a] * iy;
      }
    }
    for (int a = 0; a < 9; ++a)
      for (int c = 0; c < 9; ++c) m.mass(a, c) += w * q.value[a] * q.value[c];
  }
  return m;
}

Eigen::MatrixXd local_stokes_matrix(double hx, double hy, const MaterialParams& mat, BasisFamily displacement_space) {
  const LocalMatrices m = local_matrices(hx, hy, displacement_space);
  const int n = static_cast<int>(m.laplace.rows());
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(2 * n + 9, 2 * n + 9);
  k.block(0, 0, n, n) = mat.two_mu() * m.laplace;
  k.block(n, n, n, n) = mat.two_mu() * m.laplace;
  k.block(0, 2 * n, 2 * n, 9) = -m.div.transpose();
  k.block(2 * n, 0, 9, 2 * n) = -m.div;
  return k;
}

namespace {

// Right-hand sides of the element problems: displacement load (component 0
// block then component 1) and the divergence-residual moments against Q2.
struct LocalLoad {
  Eigen::VectorXd displacement;
  Eigen::VectorXd divergence;
  double divergence_norm_sq = 0.0;
};

LocalLoad local_load(const ResidualData& data, int el, BasisFamily space) {
  const Mesh& mesh = *data.disc.mesh;
  const Element& k = mesh.element(el);
  const QuadratureRule& rule = assembly_rule();
  const GaussRule1D& g = edge_rule();
  const int n = basis_size(space);
  const double jac = 0.25 * k.hx * k.hy;

  LocalLoad out{Eigen::VectorXd::Zero(2 * n), Eigen::VectorXd::Zero(9), 0.0};
  for (int q = 0; q < rule.size(); ++q) {
    const BasisValues b = basis_eval(space, rule.xi[q], rule.eta[q]);
    const BasisValues p = basis_eval(BasisFamily::Q2Full, rule.xi[q], rule.eta[q]);
    const double w = rule.weights[q] * jac;
    const Vec2& r = data.interior[el][q];
    const double d = data.divergence[el][q];
    for (int i = 0; i < n; ++i) {
      out.displacement[i] += w * r[0] * b.value[i];
      out.displacement[n + i] += w * r[1] * b.value[i];
    }
    for (int a = 0; a < 9; ++a) out.divergence[a] += w * d * p.value[a];
    out.divergence_norm_sq += w * d * d;
  }
  for (int side = 0; side < 4; ++side) {
    const int id = k.edges[side];
    const Edge& e = mesh.edge(id);
    if (e.tag == EdgeTag::Dirichlet) continue;
    const double half_len = 0.5 * e.length;
    for (int q = 0; q < g.size(); ++q) {
      const auto ref = side_point(side, g.points[q]);
      const BasisValues b = basis_eval(space, ref[0], ref[1]);
      const Vec2& r = data.edge[id][q];
      const double w = g.weights[q] * half_len;
      for (int i = 0; i < n; ++i) {
        out.displacement[i] -= w * r[0] * b.value[i];
        out.displacement[n + i] -= w * r[1] * b.value[i];
      }
    }
  }
  return out;
}

// Block-diagonal (per component) copy of a scalar matrix.
Eigen::MatrixXd vector_laplace(const Eigen::MatrixXd& laplace) {
  const auto n = laplace.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = laplace;
  out.bottomRightCorner(n, n) = laplace;
  return out;
}

// Cache of local matrices keyed by element size; uniform grids need one.
class LocalMatrixCache {
 public:
  explicit LocalMatrixCache(BasisFamily space) : space_(space) {}
  const LocalMatrices& get(const Element& k) {
    const auto key = std::make_pair(k.hx, k.hy);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, local_matrices(k.hx, k.hy, space_)).first;
    return it->second;
  }

 private:
  BasisFamily space_;
  std::map<std::pair<double, double>, LocalMatrices> cache_;
};

LocalCorrection solve_with(EstimatorKind kind, const ResidualData& data, int el, const LocalMatrices& m,
                           BasisFamily space) {
  const MaterialParams& mat = data.material;
  const int n = static_cast<int>(m.laplace.rows());
  const LocalLoad load = local_load(data, el, space);
  LocalCorrection out;

  if (kind == EstimatorKind::Poisson) {
    Eigen::LLT<Eigen::MatrixXd> llt(mat.two_mu() * m.laplace);
    if (llt.info() != Eigen::Success)
      fail(ErrorCode::Internal, "Poisson local matrix is not positive definite on element " + std::to_string(el));
    out.displacement.resize(2 * n);
    out.displacement.head(n) = llt.solve(load.displacement.head(n));
    out.displacement.tail(n) = llt.solve(load.displacement.tail(n));
    out.displacement_energy = out.displacement.dot(load.displacement);
    out.pressure_energy = mat.rho_d() * load.divergence_norm_sq;
    return out;
  }

  // Mixed element problems:
  //   [ A   -D^T       ] [e  ]   [ F  ]
  //   [ -D  -M/lambda  ] [eps] = [ -G ]
  // where G is the moment vector of div u_h + p_h/lambda against Q2.
  // Solved in the scaled unknowns sqrt(2 mu) e and eps / sqrt(2 mu), which
  // removes mu from the matrix.
  const double s = std::sqrt(mat.two_mu());
  Eigen::MatrixXd a;
  double mass_weight = 0.0;
  switch (kind) {
    case EstimatorKind::Stokes:
    case EstimatorKind::ModifiedElasticity:
      a = vector_laplace(m.laplace);
      break;
    default:
      a = m.strain;
      break;
  }
  if (kind != EstimatorKind::Stokes) mass_weight = mat.lambda_inv * mat.two_mu();

  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(2 * n + 9, 2 * n + 9);
  k.topLeftCorner(2 * n, 2 * n) = a;
  k.topRightCorner(2 * n, 9) = -m.div.transpose();
  k.bottomLeftCorner(9, 2 * n) = -m.div;
  k.bottomRightCorner(9, 9) = -mass_weight * m.mass;
  Eigen::VectorXd rhs(2 * n + 9);
  rhs.head(2 * n) = load.displacement / s;
  rhs.tail(9) = -s * load.divergence;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(k);
  if (!lu.isInvertible())
    fail(ErrorCode::SolverFailure, std::string(to_string(kind)) + " local problem is singular on element " +
                                       std::to_string(el) + " (correction spaces not inf-sup stable)");
  Eigen::VectorXd x = lu.solve(rhs);
  x.head(2 * n) /= s;
  x.tail(9) *= s;
  out.displacement = x.head(2 * n);
  out.pressure = x.tail(9);
  const double p_mass = out.pressure.dot(m.mass * out.pressure);
  if (kind == EstimatorKind::Stokes) {
    out.displacement_energy = mat.two_mu() * out.displacement.dot(vector_laplace(m.laplace) * out.displacement);
    out.pressure_energy = p_mass / mat.rho_d();
  } else {
    out.displacement_energy = mat.two_mu() * out.displacement.dot(m.strain * out.displacement);
    out.pressure_energy = mat.pressure_norm_weight() * p_mass;
  }
  return out;
}

EstimatorReport local_estimator(EstimatorKind kind, const ResidualData& data, const LocalProblemOptions& opts) {
  const Mesh& mesh = *data.disc.mesh;
  LocalMatrixCache cache(opts.displacement_space);
  EstimatorReport r;
  r.kind = kind;
  r.eta_sq.resize(mesh.num_elements());
  r.components.resize(mesh.num_elements());
  r.theta_sq = data.theta_sq;
  for (int el = 0; el < mesh.num_elements(); ++el) {
    const LocalCorrection c = solve_with(kind, data, el, cache.get(mesh.element(el)), opts.displacement_space);
    r.components[el] = {c.displacement_energy, 0.0, c.pressure_energy};
    r.eta_sq[el] = c.displacement_energy + c.pressure_energy;
  }
  finish_report(r);
  return r;
}

}  // namespace

LocalCorrection solve_local_problem(EstimatorKind kind, const ResidualData& data, int element,
                                    const LocalProblemOptions& opts) {
  require(kind != EstimatorKind::Residual, "the residual estimator has no local problem");
  const Element& k = data.disc.mesh->element(element);
  return solve_with(kind, data, element, local_matrices(k.hx, k.hy, opts.displacement_space), opts.displacement_space);
}

EstimatorReport poisson_local_estimator(const ResidualData& data, const LocalProblemOptions& opts) {
  return local_estimator(EstimatorKind::Poisson, data, opts);
}

EstimatorReport stokes_local_estimator(const ResidualData& data, const LocalProblemOptions& opts) {
  return local_estimator(EstimatorKind::Stokes, data, opts);
}

EstimatorReport elasticity_local_estimator(const ResidualData& data, ElasticityVariant variant,
                                           const LocalProblemOptions& opts) {
  return local_estimator(variant == ElasticityVariant::Full ? EstimatorKind::Elasticity
                                                            : EstimatorKind::ModifiedElasticity,
                         data, opts);
}

EstimatorReport compute_estimator(EstimatorKind kind, const ResidualData& data, const LocalProblemOptions& opts) {
  if (kind == EstimatorKind::Residual) return residual_estimator(data);
  return local_estimator(kind, data, opts);
}

}  // namespace elastmix
