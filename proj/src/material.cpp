#include "elastmix/material.hpp"

#include <string>

#include "elastmix/error.hpp"

namespace elastmix {

MaterialParams MaterialParams::from_poisson(double mu, double nu) {
  require(std::isfinite(mu) && mu > 0.0, "shear modulus must be positive");
  require(std::isfinite(nu) && nu > 0.0 && nu <= 0.5, "Poisson ratio must lie in (0, 1/2]");
  MaterialParams m;
  m.mu = mu;
  m.nu = nu;
  m.lambda_inv = (1.0 - 2.0 * nu) / (2.0 * mu * nu);
  return m;
}

MaterialParams MaterialParams::from_lame(double mu, double lambda_inv) {
  require(std::isfinite(mu) && mu > 0.0, "shear modulus must be positive");
  require(std::isfinite(lambda_inv) && lambda_inv >= 0.0, "1/lambda must be finite and non-negative");
  MaterialParams m;
  m.mu = mu;
  m.lambda_inv = lambda_inv;
  return m;
}

}  // namespace elastmix
