#pragma once

namespace amhd {

/// Transport coefficients and the gamma-law pressure P(rho) = rho^gamma / gamma.
struct PhysParams {
  double mu = 1.0;      ///< shear viscosity
  double lambda = 0.0;  ///< volume viscosity
  double sigma = 1.0;   ///< horizontal magnetic diffusivity
  double gamma = 2.0;   ///< pressure-law exponent

  static constexpr double rho_bar = 1.0;

  double nu() const { return lambda + 2.0 * mu; }
  double lambda_plus_mu() const { return lambda + mu; }

  /// Throws DomainError naming the violated condition (mu > 0, nu > 0, sigma > 0, gamma >= 1).
  void validate() const;
};

/// P(rho) = rho^gamma / gamma, normalised so that P'(1) = 1.
double pressure(double rho, const PhysParams& p);
/// P'(rho) = rho^(gamma-1).
double pressure_deriv(double rho, const PhysParams& p);

/// I(a) = a / (1 + a).
double I_of(double a);
/// J(a) = P'(1 + a) / (1 + a) - 1.
double J_of(double a, const PhysParams& p);

}  // namespace amhd
