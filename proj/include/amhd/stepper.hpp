#pragma once

#include <optional>

#include "amhd/dynamics.hpp"

namespace amhd {

enum class Mode { full, linear };

/// exp(h L) for the linear part of the perturbation system, one mode at a time.
///
/// Per wavevector k the 4x4 block on (a_hat, u_hat) splits into a real 2x2
/// acoustic block on (a_hat, q = i k_hat.u_hat),
///     d/dt [a; q] = [[0, -|k|], [|k|, -nu |k|^2]] [a; q],
/// and heat factors exp(-mu |k|^2 h) for the transverse velocity.
/// B_hat decays by exp(-sigma (k1^2 + k2^2) h). Modes outside the mask are zeroed.
class LinearPropagator {
 public:
  LinearPropagator(GridPtr grid, const PhysParams& p, double h);

  double h() const { return h_; }
  SpectralState apply(const SpectralState& s) const;

 private:
  GridPtr grid_;
  double h_;
  Eigen::ArrayXd e00_, e01_, e10_, e11_;
  Eigen::ArrayXd transverse_;
  Eigen::ArrayXd magnetic_;
};

struct StepOptions {
  Mode mode = Mode::full;
  double cfl = 0.5;
  double vacuum_floor = 1e-6;
  double max_abs_a = 0.5;  ///< guard on sup|a|
};

/// Integrating-factor RK4: exact linear propagation, classical four stages on f1, f2, f3.
/// Not thread-safe: caches the propagators of the last step size.
class Stepper {
 public:
  Stepper(GridPtr grid, PhysParams p, StepOptions opt = {});

  const PhysParams& params() const { return p_; }
  const StepOptions& options() const { return opt_; }

  /// One accepted step from s to s.t + dt; throws StepRejected on blow-up, vacuum,
  /// guard or CFL violation.
  State step(const State& s, double dt);

  /// The spectral update without admissibility checks on the result.
  SpectralState advance(const SpectralState& s, double dt);

 private:
  void prepare(double dt);

  GridPtr grid_;
  PhysParams p_;
  StepOptions opt_;
  std::optional<LinearPropagator> half_, full_;
};

State step(const State& s, double dt, const PhysParams& p, Mode mode = Mode::full);

}  // namespace amhd
