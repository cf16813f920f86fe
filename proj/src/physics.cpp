#include "amhd/physics.hpp"

#include <cmath>

#include "amhd/errors.hpp"

namespace amhd {

void PhysParams::validate() const {
  if (!(mu > 0.0)) throw DomainError("mu > 0 violated (shear viscosity)");
  if (!(nu() > 0.0)) throw DomainError("nu = lambda + 2 mu > 0 violated (strong parabolicity)");
  if (!(sigma > 0.0)) throw DomainError("sigma > 0 violated (magnetic diffusivity)");
  if (!(gamma >= 1.0)) throw DomainError("gamma >= 1 violated (pressure law)");
}

double pressure(double rho, const PhysParams& p) {
  if (!(rho > 0.0)) throw DomainError("pressure: rho <= 0 (vacuum)");
  return std::pow(rho, p.gamma) / p.gamma;
}

double pressure_deriv(double rho, const PhysParams& p) {
  if (!(rho > 0.0)) throw DomainError("pressure_deriv: rho <= 0 (vacuum)");
  return std::pow(rho, p.gamma - 1.0);
}

double I_of(double a) {
  if (!(a > -1.0)) throw DomainError("I(a): a <= -1 (vacuum)");
  return a / (1.0 + a);
}

double J_of(double a, const PhysParams& p) {
  if (!(a > -1.0)) throw DomainError("J(a): a <= -1 (vacuum)");
  // rho^(gamma-2) - 1, written to stay accurate for small a.
  return std::expm1((p.gamma - 2.0) * std::log1p(a));
}

}  // namespace amhd
