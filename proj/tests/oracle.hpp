#pragma once

// Reference computations written apart from the library code paths. Nothing
// here calls the library's basis, quadrature or evaluation routines.

#include <array>
#include <cmath>
#include <numbers>

#include "elastmix/solver.hpp"

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

// Seven-point Gauss-Legendre rule, tabulated values.
inline constexpr std::array<double, 7> kGaussX = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
                                                  0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
inline constexpr std::array<double, 7> kGaussW = {0.1294849661946865, 0.2797053914892766, 0.3818300505051189,
                                                  0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
                                                  0.1294849661946865};

// 1D quadratic Lagrange function with node r in {-1, 0, 1}, and its derivative.
inline double lag2(int r, double t) {
  if (r == -1) return 0.5 * t * (t - 1.0);
  if (r == 0) return 1.0 - t * t;
  return 0.5 * t * (t + 1.0);
}
inline double dlag2(int r, double t) {
  if (r == -1) return t - 0.5;
  if (r == 0) return -2.0 * t;
  return t + 0.5;
}

// Analytic test problem: u1 = (pi/2) sin^2(pi x) sin(2 pi y),
// u2 = -(pi/2) sin(2 pi x) sin^2(pi y), p = 0.
inline std::array<double, 4> p1_grad(double x, double y) {
  const double pi2 = kPi * kPi;
  const double s = 0.5 * pi2 * std::sin(2 * kPi * x) * std::sin(2 * kPi * y);
  const double sx = std::sin(kPi * x), sy = std::sin(kPi * y);
  return {s, pi2 * sx * sx * std::cos(2 * kPi * y), -pi2 * sy * sy * std::cos(2 * kPi * x), -s};
}

// -mu Laplacian of u (div u = 0, p = 0).
inline std::array<double, 2> p1_load(double mu, double x, double y) {
  const double pi3 = kPi * kPi * kPi;
  return {-mu * pi3 * std::sin(2 * kPi * y) * (2 * std::cos(2 * kPi * x) - 1),
          mu * pi3 * std::sin(2 * kPi * x) * (2 * std::cos(2 * kPi * y) - 1)};
}

// Energy error of a discrete solution against the analytic problem, term by
// term with the tabulated 7x7 rule. Pressure coefficients are read either as
// vertex values (Q1) or as element modes {1, xi, eta}.
inline double p1_energy_error(const elastmix::MixedSolution& sol) {
  const auto& mesh = *sol.disc.mesh;
  const auto& dofs = *sol.disc.dofs;
  double grad_sum = 0.0, p_sum = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& k = mesh.element(e);
    const auto& nodes = dofs.element_nodes(e);
    const auto pdofs = dofs.element_pressure(e);
    for (int i = 0; i < 7; ++i) {
      for (int j = 0; j < 7; ++j) {
        const double xi = kGaussX[i], eta = kGaussX[j];
        const double w = kGaussW[i] * kGaussW[j] * 0.25 * k.hx * k.hy;
        const double x = k.x0 + 0.5 * k.hx * (xi + 1), y = k.y0 + 0.5 * k.hy * (eta + 1);
        double g[2][2] = {{0, 0}, {0, 0}};
        for (int n : nodes) {
          const auto& c = dofs.node(n);
          const int rx = static_cast<int>(std::lround(2 * (c.x - k.x0) / k.hx - 1));
          const int ry = static_cast<int>(std::lround(2 * (c.y - k.y0) / k.hy - 1));
          const double dx = dlag2(rx, xi) * lag2(ry, eta) * 2 / k.hx;
          const double dy = lag2(rx, xi) * dlag2(ry, eta) * 2 / k.hy;
          for (int comp = 0; comp < 2; ++comp) {
            const double v = sol.displacement[dofs.displacement_dof(n, comp)];
            g[comp][0] += v * dx;
            g[comp][1] += v * dy;
          }
        }
        double ph = 0.0;
        if (dofs.pair() == elastmix::ElementPair::Q2Q1) {
          for (int a = 0; a < 4; ++a) {
            const auto& v = mesh.vertices()[k.vertices[a]];
            const double bx = v.x == k.x0 ? 0.5 * (1 - xi) : 0.5 * (1 + xi);
            const double by = v.y == k.y0 ? 0.5 * (1 - eta) : 0.5 * (1 + eta);
            ph += sol.pressure[pdofs[a]] * bx * by;
          }
        } else {
          ph = sol.pressure[pdofs[0]] + sol.pressure[pdofs[1]] * xi + sol.pressure[pdofs[2]] * eta;
        }
        const auto ge = p1_grad(x, y);
        const double d00 = ge[0] - g[0][0], d01 = ge[1] - g[0][1], d10 = ge[2] - g[1][0], d11 = ge[3] - g[1][1];
        grad_sum += w * (d00 * d00 + d01 * d01 + d10 * d10 + d11 * d11);
        p_sum += w * ph * ph;
      }
    }
  }
  const double two_mu = 2 * sol.material.mu;
  return std::sqrt(two_mu * grad_sum + (1 / two_mu + sol.material.lambda_inv) * p_sum);
}

}  // namespace oracle
