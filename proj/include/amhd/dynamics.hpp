#pragma once

#include "amhd/physics.hpp"
#include "amhd/spectral.hpp"
#include "amhd/state.hpp"

namespace amhd {

struct RhsOptions {
  double vacuum_floor = 1e-6;  ///< smallest admissible rho
};

/// Time derivatives (da/dt, du/dt, dB/dt).
struct TimeDerivative {
  Field da;
  Field du;
  Field dB;
};

/// Reformulated right-hand side with its nonlinear parts exposed.
struct ReformulatedRhs {
  TimeDerivative total;
  Field f1;  ///< -u.grad a - a div u
  Field f2;  ///< momentum nonlinearity
  Field f3;  ///< -u.grad B + B.grad u - B div u
};

/// Continuity, momentum with Lorentz force, and induction with sigma*Delta_h, in primitive form.
TimeDerivative rhs_primitive(const State& s, const PhysParams& p, const RhsOptions& opt = {});

/// Perturbation form: linear part plus f1, f2, f3 built from I(a) and J(a).
ReformulatedRhs rhs_reformulated(const State& s, const PhysParams& p, const RhsOptions& opt = {});

/// Masked Fourier coefficients of (a, u, B); the stepper's working representation.
struct SpectralState {
  SpectralField a;
  SpectralField u;
  SpectralField B;

  SpectralState& operator+=(const SpectralState& o);
  SpectralState& operator*=(double c);
};

SpectralState operator+(SpectralState x, const SpectralState& y);
SpectralState operator*(double c, SpectralState x);

SpectralState to_spectral(const State& s);
State to_physical(const SpectralState& s, double t);

/// (f1, f2, f3) in masked spectral form, packed like a SpectralState.
SpectralState nonlinear_terms(const SpectralState& s, const PhysParams& p,
                              const RhsOptions& opt = {});

/// CFL bound cfl * min(dx) / (max|u| + 1 + max|B|); 1 is the sound speed at rho = 1.
double stable_dt(const State& s, double cfl = 0.5);

}  // namespace amhd
