#pragma once

#include <cmath>
#include <limits>

namespace elastmix {

/// Isotropic material in Lame form. The first Lame parameter is stored as
/// its reciprocal so that the incompressible limit (nu = 1/2) is the
/// ordinary value `lambda_inv == 0`.
struct MaterialParams {
  double mu = 1.0;
  double lambda_inv = 0.0;
  /// Poisson ratio when constructed from one; NaN otherwise.
  double nu = std::numeric_limits<double>::quiet_NaN();

  /// Requires mu > 0 and 0 < nu <= 1/2.
  static MaterialParams from_poisson(double mu, double nu);
  /// Requires mu > 0 and lambda_inv >= 0.
  static MaterialParams from_lame(double mu, double lambda_inv);

  double two_mu() const { return 2.0 * mu; }
  /// Infinite at nu = 1/2.
  double lambda() const {
    return lambda_inv == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / lambda_inv;
  }

  /// Weight of the divergence residual: 1 / (1/lambda + 1/(2 mu)).
  double rho_d() const { return 1.0 / (lambda_inv + 1.0 / two_mu()); }
  /// Element weight h_K (2 mu)^{-1/2} / 2, with h_K the longest side.
  double rho_k(double h_k) const { return 0.5 * h_k / std::sqrt(two_mu()); }
  /// Edge weight h_E / (2 mu).
  double rho_e(double h_e) const { return h_e / two_mu(); }

  /// Weight of the pressure error in the energy norm.
  double pressure_norm_weight() const { return 1.0 / two_mu() + lambda_inv; }
};

}  // namespace elastmix
