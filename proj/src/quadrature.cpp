#include "elastmix/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "elastmix/error.hpp"

namespace elastmix {

namespace {

// Returns (P_n(x), P_n'(x)) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussRule1D gauss_rule_1d(int n) {
  require(n >= 1 && n <= 10, "Gauss rule order must lie in [1, 10]");
  GaussRule1D rule;
  if (n == 1) {
    rule.points = {0.0};
    rule.weights = {2.0};
    return rule;
  }
  rule.points.resize(n);
  rule.weights.resize(n);
  // Roots are symmetric; Newton on the upper half only.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = -x;
    rule.points[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.0;
  return rule;
}

QuadratureRule gauss_rule(int points_per_dim) {
  const GaussRule1D g = gauss_rule_1d(points_per_dim);
  QuadratureRule rule;
  rule.degree = 2 * points_per_dim - 1;
  for (int j = 0; j < g.size(); ++j) {
    for (int i = 0; i < g.size(); ++i) {
      rule.xi.push_back(g.points[i]);
      rule.eta.push_back(g.points[j]);
      rule.weights.push_back(g.weights[i] * g.weights[j]);
    }
  }
  return rule;
}

const QuadratureRule& assembly_rule() {
  static const QuadratureRule rule = gauss_rule(4);
  return rule;
}

const QuadratureRule& data_rule() {
  static const QuadratureRule rule = gauss_rule(7);
  return rule;
}

const GaussRule1D& edge_rule() {
  static const GaussRule1D rule = gauss_rule_1d(4);
  return rule;
}

}  // namespace elastmix
