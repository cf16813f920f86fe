#include "amhd/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "amhd/errors.hpp"

namespace amhd {

namespace {

const Complex I(0.0, 1.0);

using Column = Eigen::ArrayXd;
using Vec3 = std::array<Column, 3>;
using Mat3 = std::array<Vec3, 3>;  // m[i][j] = d_j v_i

// Physical-space samples of the masked state and every derivative the
// nonlinear terms need.
struct Pointwise {
  Column a;
  Vec3 grad_a;
  Vec3 u;
  Mat3 grad_u;
  Vec3 B;
  Mat3 grad_B;
  Vec3 visc;  // mu Lap u + (lambda+mu) grad div u
};

Column to_samples(const Grid& g, const Eigen::ArrayXcd& coeffs) {
  Column out(static_cast<Eigen::Index>(g.size()));
  g.inverse(coeffs.data(), out.data());
  return out;
}

Column derivative_samples(const Grid& g, const Eigen::ArrayXcd& coeffs, int axis) {
  Column out(static_cast<Eigen::Index>(g.size()));
  g.inverse_derivative(coeffs.data(), static_cast<Axis>(axis), out.data());
  return out;
}

Pointwise sample(const SpectralState& s, const PhysParams& p) {
  const Grid& g = s.a.grid();
  Pointwise w;
  w.a = to_samples(g, s.a.component(0));
  for (int j = 0; j < 3; ++j) w.grad_a[j] = derivative_samples(g, s.a.component(0), j);
  const Eigen::ArrayXcd divu = I * (g.k(Axis::x1) * s.u.component(0) +
                                    g.k(Axis::x2) * s.u.component(1) +
                                    g.k(Axis::x3) * s.u.component(2));
  for (int i = 0; i < 3; ++i) {
    w.u[i] = to_samples(g, s.u.component(i));
    w.B[i] = to_samples(g, s.B.component(i));
    for (int j = 0; j < 3; ++j) {
      w.grad_u[i][j] = derivative_samples(g, s.u.component(i), j);
      w.grad_B[i][j] = derivative_samples(g, s.B.component(i), j);
    }
    const Eigen::ArrayXd& ki = g.k(static_cast<Axis>(i));
    w.visc[i] = to_samples(g, -p.mu * g.k2() * s.u.component(i) +
                                  p.lambda_plus_mu() * I * ki * divu);
  }
  return w;
}

void check_density(const Column& a, double floor) {
  const double min_rho = 1.0 + a.minCoeff();
  if (!std::isfinite(min_rho)) throw StepRejected(RejectCause::blow_up, "non-finite density");
  if (min_rho < floor) {
    std::ostringstream msg;
    msg << "vacuum: min rho = " << min_rho << " below floor " << floor;
    throw StepRejected(RejectCause::vacuum, msg.str());
  }
}

SpectralField masked_forward(const GridPtr& g, const Column& x) {
  SpectralField out(g, Rank::scalar);
  g->forward(x.data(), out.component(0).data());
  out.component(0) *= g->mask();
  return out;
}

SpectralField masked_forward(const GridPtr& g, const Vec3& x) {
  SpectralField out(g, Rank::vector);
  for (int c = 0; c < 3; ++c) {
    g->forward(x[c].data(), out.component(c).data());
    out.component(c) *= g->mask();
  }
  return out;
}

void require_finite(const SpectralState& s, const char* what) {
  if (!s.a.coefficients().allFinite() || !s.u.coefficients().allFinite() ||
      !s.B.coefficients().allFinite()) {
    throw StepRejected(RejectCause::blow_up, std::string("non-finite values in ") + what);
  }
}

Field masked(const SpectralField& F) { return inverse(F); }

}  // namespace

SpectralState& SpectralState::operator+=(const SpectralState& o) {
  a += o.a;
  u += o.u;
  B += o.B;
  return *this;
}

SpectralState& SpectralState::operator*=(double c) {
  a *= c;
  u *= c;
  B *= c;
  return *this;
}

SpectralState operator+(SpectralState x, const SpectralState& y) { return x += y; }
SpectralState operator*(double c, SpectralState x) { return x *= c; }

SpectralState to_spectral(const State& s) {
  return {truncate(forward(s.a)), truncate(forward(s.u)), truncate(forward(s.B))};
}

State to_physical(const SpectralState& s, double t) {
  return State(t, inverse(s.a), inverse(s.u), inverse(s.B));
}

SpectralState nonlinear_terms(const SpectralState& s, const PhysParams& p, const RhsOptions& opt) {
  const GridPtr& grid = s.a.grid_ptr();
  const Pointwise w = sample(s, p);
  check_density(w.a, opt.vacuum_floor);

  const Eigen::Index n = w.a.size();
  Column f1(n);
  Vec3 f2, f3;
  for (int i = 0; i < 3; ++i) {
    f2[i].resize(n);
    f3[i].resize(n);
  }
  const bool gamma_two = p.gamma == 2.0;

  for (Eigen::Index q = 0; q < n; ++q) {
    const double a = w.a[q];
    const double rho = 1.0 + a;
    const double divu = w.grad_u[0][0][q] + w.grad_u[1][1][q] + w.grad_u[2][2][q];
    f1[q] = -(w.u[0][q] * w.grad_a[0][q] + w.u[1][q] * w.grad_a[1][q] +
              w.u[2][q] * w.grad_a[2][q]) -
            a * divu;
    const double Ia = a / rho;
    const double Ja = gamma_two ? 0.0 : std::expm1((p.gamma - 2.0) * std::log1p(a));
    for (int i = 0; i < 3; ++i) {
      double adv_u = 0.0, b_grad_b = 0.0, grad_half_b2 = 0.0, adv_b = 0.0, b_grad_u = 0.0;
      for (int j = 0; j < 3; ++j) {
        adv_u += w.u[j][q] * w.grad_u[i][j][q];
        b_grad_b += w.B[j][q] * w.grad_B[i][j][q];
        grad_half_b2 += w.B[j][q] * w.grad_B[j][i][q];
        adv_b += w.u[j][q] * w.grad_B[i][j][q];
        b_grad_u += w.B[j][q] * w.grad_u[i][j][q];
      }
      const double lorentz = b_grad_b - grad_half_b2;
      // -grad P / rho = -(1 + J(a)) grad a, hence -J(a) grad a here.
      f2[i][q] = -adv_u + lorentz - Ja * w.grad_a[i][q] - Ia * w.visc[i][q] - Ia * lorentz;
      f3[i][q] = -adv_b + b_grad_u - w.B[i][q] * divu;
    }
  }

  SpectralState out{masked_forward(grid, f1), masked_forward(grid, f2), masked_forward(grid, f3)};
  require_finite(out, "nonlinear terms");
  return out;
}

ReformulatedRhs rhs_reformulated(const State& s, const PhysParams& p, const RhsOptions& opt) {
  const SpectralState S = to_spectral(s);
  const SpectralState N = nonlinear_terms(S, p, opt);
  const Grid& g = S.a.grid();

  SpectralField da = N.a - divergence(S.u);
  SpectralField du = N.u;
  const SpectralField divu = divergence(S.u);
  for (int i = 0; i < 3; ++i) {
    const Eigen::ArrayXd& ki = g.k(static_cast<Axis>(i));
    du.component(i) += -p.mu * g.k2() * S.u.component(i) +
                       p.lambda_plus_mu() * I * ki * divu.component(0) -
                       I * ki * S.a.component(0);
  }
  SpectralField dB = N.B + p.sigma * laplacian_h(S.B);

  return {{masked(da), masked(du), masked(dB)}, masked(N.a), masked(N.u), masked(N.B)};
}

TimeDerivative rhs_primitive(const State& s, const PhysParams& p, const RhsOptions& opt) {
  const SpectralState S = to_spectral(s);
  const GridPtr& grid = S.a.grid_ptr();
  const Pointwise w = sample(S, p);
  check_density(w.a, opt.vacuum_floor);

  const Eigen::Index n = w.a.size();
  Vec3 momentum, velocity_rate, induction;
  for (int i = 0; i < 3; ++i) {
    momentum[i].resize(n);
    velocity_rate[i].resize(n);
    induction[i].resize(n);
  }
  for (Eigen::Index q = 0; q < n; ++q) {
    const double rho = 1.0 + w.a[q];
    const double dP = std::pow(rho, p.gamma - 1.0);
    const double divu = w.grad_u[0][0][q] + w.grad_u[1][1][q] + w.grad_u[2][2][q];
    const auto& dB = w.grad_B;
    const std::array<double, 3> J{dB[2][1][q] - dB[1][2][q], dB[0][2][q] - dB[2][0][q],
                                  dB[1][0][q] - dB[0][1][q]};
    const std::array<double, 3> B{w.B[0][q], w.B[1][q], w.B[2][q]};
    const std::array<double, 3> JxB{J[1] * B[2] - J[2] * B[1], J[2] * B[0] - J[0] * B[2],
                                    J[0] * B[1] - J[1] * B[0]};
    for (int i = 0; i < 3; ++i) {
      double adv_u = 0.0, adv_b = 0.0, b_grad_u = 0.0;
      for (int j = 0; j < 3; ++j) {
        adv_u += w.u[j][q] * w.grad_u[i][j][q];
        adv_b += w.u[j][q] * w.grad_B[i][j][q];
        b_grad_u += B[j] * w.grad_u[i][j][q];
      }
      momentum[i][q] = rho * w.u[i][q];
      velocity_rate[i][q] =
          (-rho * adv_u + w.visc[i][q] - dP * w.grad_a[i][q] + JxB[i]) / rho;
      induction[i][q] = -adv_b - B[i] * divu + b_grad_u;
    }
  }

  const SpectralField da = -1.0 * divergence(masked_forward(grid, momentum));
  const SpectralField du = masked_forward(grid, velocity_rate);
  const SpectralField dB = masked_forward(grid, induction) + p.sigma * laplacian_h(S.B);
  SpectralState out{da, du, dB};
  require_finite(out, "primitive rhs");
  return {masked(out.a), masked(out.u), masked(out.B)};
}

double stable_dt(const State& s, double cfl) {
  const Grid& g = s.grid();
  const double dx = std::min({g.spacing(Axis::x1), g.spacing(Axis::x2), g.spacing(Axis::x3)});
  const Eigen::ArrayXd speed_u = s.u.samples().square().rowwise().sum().sqrt();
  const Eigen::ArrayXd speed_b = s.B.samples().square().rowwise().sum().sqrt();
  return cfl * dx / (speed_u.maxCoeff() + 1.0 + speed_b.maxCoeff());
}

}  // namespace amhd
