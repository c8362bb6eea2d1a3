#pragma once

#include <vector>

namespace elastmix {

/// Gauss-Legendre rule on [-1,1].
struct GaussRule1D {
  std::vector<double> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

/// Tensor-product rule on the reference square [-1,1]^2. Point k is
/// (xi[k], eta[k]).
struct QuadratureRule {
  std::vector<double> xi;
  std::vector<double> eta;
  std::vector<double> weights;
  /// Exact for polynomials of this degree in each variable.
  int degree = 0;

  int size() const { return static_cast<int>(weights.size()); }
};

/// 1 <= n <= 10; exact through degree 2n-1.
GaussRule1D gauss_rule_1d(int n);

/// Tensor-product Gauss-Legendre rule with `points_per_dim` points in each
/// direction.
QuadratureRule gauss_rule(int points_per_dim);

/// Shared instances for the orders used throughout the library.
const QuadratureRule& assembly_rule();  // 4x4
const QuadratureRule& data_rule();      // 7x7
const GaussRule1D& edge_rule();         // 4 points

}  // namespace elastmix
