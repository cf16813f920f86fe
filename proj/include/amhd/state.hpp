#pragma once

#include "amhd/field.hpp"

namespace amhd {

/// Unknowns at one instant: density perturbation a = rho - 1, velocity u, magnetic field B.
struct State {
  double t = 0.0;
  Field a;
  Field u;
  Field B;

  explicit State(const GridPtr& grid)
      : a(Field::scalar(grid)), u(Field::vector(grid)), B(Field::vector(grid)) {}
  State(double time, Field a_, Field u_, Field B_);

  const Grid& grid() const { return a.grid(); }
  const GridPtr& grid_ptr() const { return a.grid_ptr(); }

  double min_rho() const { return 1.0 + a.samples().minCoeff(); }
  double max_abs_a() const { return a.max_abs(); }
  bool all_finite() const { return a.all_finite() && u.all_finite() && B.all_finite(); }
};

/// Zero fields: the equilibrium (rho, u, B) = (1, 0, 0).
inline State equilibrium(const GridPtr& grid) { return State(grid); }

}  // namespace amhd
