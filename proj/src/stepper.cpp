#include "amhd/stepper.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "amhd/errors.hpp"

namespace amhd {

namespace {

const Complex I(0.0, 1.0);

}  // namespace

LinearPropagator::LinearPropagator(GridPtr grid, const PhysParams& p, double h)
    : grid_(std::move(grid)), h_(h) {
  const Grid& g = *grid_;
  const auto n = static_cast<Eigen::Index>(g.spectral_size());
  e00_.setZero(n);
  e01_.setZero(n);
  e10_.setZero(n);
  e11_.setZero(n);
  transverse_.setZero(n);
  magnetic_.setZero(n);
  const double nu = p.nu();
  for (Eigen::Index s = 0; s < n; ++s) {
    if (g.mask()[s] == 0.0) continue;
    const double k2 = g.k2()[s];
    if (k2 == 0.0) {
      e00_[s] = e11_[s] = transverse_[s] = magnetic_[s] = 1.0;
      continue;
    }
    const double k = std::sqrt(k2);
    Eigen::Matrix2d L;
    L << 0.0, -k, k, -nu * k2;
    const Eigen::Matrix2d E = (h * L).exp();
    e00_[s] = E(0, 0);
    e01_[s] = E(0, 1);
    e10_[s] = E(1, 0);
    e11_[s] = E(1, 1);
    transverse_[s] = std::exp(-p.mu * k2 * h);
    magnetic_[s] = std::exp(-p.sigma * g.kh2()[s] * h);
  }
}

SpectralState LinearPropagator::apply(const SpectralState& in) const {
  const Grid& g = *grid_;
  SpectralState out = in;
  auto& a = out.a.coefficients();
  auto& u = out.u.coefficients();
  const auto& k1 = g.k(Axis::x1);
  const auto& k2 = g.k(Axis::x2);
  const auto& k3 = g.k(Axis::x3);
  for (Eigen::Index s = 0; s < a.rows(); ++s) {
    const double kk = g.k2()[s];
    if (kk == 0.0) {
      a(s, 0) *= e00_[s];
      for (int c = 0; c < 3; ++c) u(s, c) *= transverse_[s];
      continue;
    }
    const double kn = std::sqrt(kk);
    const double kh[3] = {k1[s] / kn, k2[s] / kn, k3[s] / kn};
    const Complex par = kh[0] * u(s, 0) + kh[1] * u(s, 1) + kh[2] * u(s, 2);
    const Complex q = I * par;
    const Complex a_new = e00_[s] * a(s, 0) + e01_[s] * q;
    const Complex q_new = e10_[s] * a(s, 0) + e11_[s] * q;
    const Complex par_new = -I * q_new;
    for (int c = 0; c < 3; ++c) {
      u(s, c) = transverse_[s] * (u(s, c) - kh[c] * par) + kh[c] * par_new;
    }
    a(s, 0) = a_new;
  }
  for (int c = 0; c < 3; ++c) out.B.component(c) *= magnetic_;
  return out;
}

Stepper::Stepper(GridPtr grid, PhysParams p, StepOptions opt)
    : grid_(std::move(grid)), p_(p), opt_(opt) {
  p_.validate();
}

void Stepper::prepare(double dt) {
  if (full_ && full_->h() == dt) return;
  half_.emplace(grid_, p_, 0.5 * dt);
  full_.emplace(grid_, p_, dt);
}

SpectralState Stepper::advance(const SpectralState& y, double h) {
  prepare(h);
  const LinearPropagator& E2 = *half_;
  const LinearPropagator& E1 = *full_;
  if (opt_.mode == Mode::linear) return E1.apply(y);

  const RhsOptions ro{opt_.vacuum_floor};
  const SpectralState k1 = nonlinear_terms(y, p_, ro);
  const SpectralState k2 = nonlinear_terms(E2.apply(y + (0.5 * h) * k1), p_, ro);
  const SpectralState y_half = E2.apply(y);
  const SpectralState k3 = nonlinear_terms(y_half + (0.5 * h) * k2, p_, ro);
  const SpectralState y_full = E1.apply(y);
  const SpectralState k4 = nonlinear_terms(y_full + h * E2.apply(k3), p_, ro);
  SpectralState incr = E1.apply(k1) + 2.0 * E2.apply(k2 + k3) + k4;
  return y_full + (h / 6.0) * incr;
}

State Stepper::step(const State& s, double dt) {
  if (!(dt > 0.0)) throw DomainError("step: dt must be positive");
  require_same_grid(s.grid(), *grid_, "step");
  const double limit = stable_dt(s, opt_.cfl);
  if (dt > limit) {
    std::ostringstream msg;
    msg << "dt = " << dt << " exceeds CFL limit " << limit << " at t = " << s.t;
    throw StepRejected(RejectCause::cfl, msg.str(), s.t);
  }

  SpectralState next = [&] {
    try {
      return advance(to_spectral(s), dt);
    } catch (const StepRejected& e) {
      throw StepRejected(e.cause(), e.what(), s.t);
    }
  }();
  // Drift control: div B = 0 is preserved analytically, not in floating point.
  next.B = project_divfree(next.B);
  State out = to_physical(next, s.t + dt);

  std::ostringstream msg;
  if (!out.all_finite()) {
    msg << "non-finite state after step from t = " << s.t;
    throw StepRejected(RejectCause::blow_up, msg.str(), s.t);
  }
  if (out.min_rho() < opt_.vacuum_floor) {
    msg << "vacuum: min rho = " << out.min_rho() << " after step from t = " << s.t;
    throw StepRejected(RejectCause::vacuum, msg.str(), s.t);
  }
  if (out.max_abs_a() > opt_.max_abs_a) {
    msg << "guard: sup|a| = " << out.max_abs_a() << " > " << opt_.max_abs_a
        << " after step from t = " << s.t;
    throw StepRejected(RejectCause::guard, msg.str(), s.t);
  }
  return out;
}

State step(const State& s, double dt, const PhysParams& p, Mode mode) {
  StepOptions opt;
  opt.mode = mode;
  Stepper stepper(s.grid_ptr(), p, opt);
  return stepper.step(s, dt);
}

}  // namespace amhd
