#include "amhd/ledger.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "amhd/errors.hpp"
#include "amhd/inequality.hpp"
#include "amhd/spectral.hpp"

namespace amhd {

namespace {

// V sum w m |F|^2 over all components.
double weighted_square(const SpectralField& F, const Eigen::ArrayXd& m) { return spectral_sum(F, F, m); }

// |k . U_hat|^2 weighted by m.
double div_square(const SpectralField& U, const Eigen::ArrayXd& m) {
  const Grid& g = U.grid();
  const Eigen::ArrayXcd d = g.k(Axis::x1) * U.component(0) + g.k(Axis::x2) * U.component(1) +
                            g.k(Axis::x3) * U.component(2);
  const SpectralField D(U.grid_ptr(), Rank::scalar, d);
  return weighted_square(D, m);
}

}  // namespace

double potential_energy_density(double rho, const PhysParams& p) {
  if (!(rho > 0.0)) throw DomainError("potential_energy_density: rho > 0 required");
  if (p.gamma == 2.0) return 0.5 * (rho - 1.0) * (rho - 1.0);
  const double p1 = pressure(1.0, p);
  auto integrand = [&](double tau) { return (pressure(tau, p) - p1) / (tau * tau); };
  if (rho == 1.0) return 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 1.0, rho, 15, 1e-12);
  return rho * v;
}

double basic_energy(const State& s, const PhysParams& p) {
  const auto& a = s.a.component(0);
  const auto& u = s.u.samples();
  const auto& B = s.B.samples();
  const Eigen::Index n = a.size();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double rho = 1.0 + a(i);
    const double u2 = u.row(i).square().sum();
    const double b2 = B.row(i).square().sum();
    sum += 2.0 * potential_energy_density(rho, p) + rho * u2 + b2;
  }
  return 0.5 * s.grid().volume() * sum / static_cast<double>(n);
}

double basic_dissipation(const State& s, const PhysParams& p) {
  const Grid& g = s.grid();
  const SpectralField U = forward(s.u);
  const SpectralField B = forward(s.B);
  return p.mu * weighted_square(U, g.k2()) + p.lambda_plus_mu() * div_square(U, Eigen::ArrayXd::Ones(g.k2().size())) +
         p.sigma * weighted_square(B, g.kh2());
}

double l2_energy(const State& s) {
  return 0.5 * (std::pow(l2_norm(s.a), 2) + std::pow(l2_norm(s.u), 2) + std::pow(l2_norm(s.B), 2));
}

H3Energies h3_energies(const State& s) {
  const Grid& g = s.grid();
  const SpectralField A = forward(s.a), U = forward(s.u), B = forward(s.B);
  const Eigen::ArrayXd w3 = sobolev_weight(g, 3.0);
  H3Energies e;
  e.h3_energy = 0.5 * (weighted_square(A, w3) + weighted_square(U, w3) + weighted_square(B, w3));
  e.diss_a = weighted_square(A, sobolev_weight(g, 2.0) * g.k2());
  e.diss_visc_h3 = weighted_square(U, w3 * g.k2());
  e.diss_div_h3 = div_square(U, w3);
  e.diss_mag_h3 = weighted_square(B, w3 * g.kh2());
  return e;
}

double cross_term(const State& s) {
  const Grid& g = s.grid();
  const SpectralField A = forward(s.a), U = forward(s.u);
  const SpectralField gradA = gradient(A);
  const Eigen::ArrayXd m = 1.0 + g.k2() + g.k2().square();
  return spectral_sum(U, gradA, m);
}

double lyapunov(const State& s, double A) {
  if (!(A > 1.0)) throw DomainError("lyapunov: A > 1 required");
  return A * 2.0 * h3_energies(s).h3_energy + 2.0 * cross_term(s);
}

EnergyReport make_report(const State& s, const PhysParams& p, const LedgerOptions& opt) {
  if (!(opt.A > 1.0)) throw DomainError("lyapunov: A > 1 required");
  const Grid& g = s.grid();
  const SpectralField A = forward(s.a), U = forward(s.u), B = forward(s.B);
  const Eigen::ArrayXd ones = Eigen::ArrayXd::Ones(g.k2().size());
  const Eigen::ArrayXd w3 = sobolev_weight(g, 3.0);

  EnergyReport r;
  r.t = s.t;
  r.basic_energy = basic_energy(s, p);
  r.l2_energy = 0.5 * (weighted_square(A, ones) + weighted_square(U, ones) + weighted_square(B, ones));
  const double a2 = weighted_square(A, w3), u2 = weighted_square(U, w3), b2 = weighted_square(B, w3);
  r.h3_energy = 0.5 * (a2 + u2 + b2);
  r.a_h3 = std::sqrt(a2);
  r.u_h3 = std::sqrt(u2);
  r.b_h3 = std::sqrt(b2);
  r.diss_visc = p.mu * weighted_square(U, g.k2());
  r.diss_div = p.lambda_plus_mu() * div_square(U, ones);
  r.diss_mag = p.sigma * weighted_square(B, g.kh2());
  r.diss_a = weighted_square(A, sobolev_weight(g, 2.0) * g.k2());
  r.diss_visc_h3 = weighted_square(U, w3 * g.k2());
  r.diss_div_h3 = div_square(U, w3);
  r.diss_mag_h3 = weighted_square(B, w3 * g.kh2());
  r.cross_term = spectral_sum(U, gradient(A), 1.0 + g.k2() + g.k2().square());
  r.lyapunov = opt.A * 2.0 * r.h3_energy + 2.0 * r.cross_term;
  if (opt.cancellations) r.cancellation_residuals = check_cancellations(s);
  r.min_rho = s.min_rho();
  r.max_abs_a = s.max_abs_a();
  r.div_b_norm = sobolev_norm(divergence(B), 0.0);
  return r;
}

std::vector<double> identity_residuals(const std::vector<EnergyReport>& samples, EnergyLaw law) {
  const std::size_t n = samples.size();
  if (n < 3) throw UsageError("energy_identity_residual: at least 3 samples required");
  const double h = samples[1].t - samples[0].t;
  if (!(h > 0.0)) throw UsageError("energy_identity_residual: sample times must increase");
  for (std::size_t i = 1; i < n; ++i) {
    const double hi = samples[i].t - samples[i - 1].t;
    if (std::abs(hi - h) > 1e-9 * std::max(1.0, std::abs(samples[i].t))) {
      throw UsageError("energy_identity_residual: samples must be uniformly spaced");
    }
  }
  auto energy = [law](const EnergyReport& r) {
    return law == EnergyLaw::basic ? r.basic_energy : r.l2_energy;
  };
  std::vector<double> out(n);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    const double dE = (energy(samples[i + 2]) - energy(samples[i])) / (2.0 * h);
    const double Dbar = (samples[i].basic_dissipation() + 4.0 * samples[i + 1].basic_dissipation() +
                         samples[i + 2].basic_dissipation()) /
                        6.0;
    const double scale = std::max(Dbar, energy(samples[i + 1]));
    out[i] = scale > 0.0 ? std::abs(dE + Dbar) / scale : 0.0;
  }
  out[n - 2] = out[n - 3];
  out[n - 1] = out[n - 3];
  return out;
}

double energy_identity_residual(const std::vector<EnergyReport>& samples, EnergyLaw law) {
  const auto r = identity_residuals(samples, law);
  return *std::max_element(r.begin(), r.end());
}

void fill_identity_residuals(std::vector<EnergyReport>& samples, EnergyLaw law) {
  if (samples.size() < 3) return;
  const auto r = identity_residuals(samples, law);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i].residual_l2_identity = r[i];
}

double e2_integrand(const EnergyReport& r, const PhysParams& p) {
  return r.diss_a + p.mu * r.diss_visc_h3 + p.lambda_plus_mu() * r.diss_div_h3 +
         p.sigma * r.diss_mag_h3;
}

TotalEnergy total_energy(const std::vector<EnergyReport>& samples, double t, const PhysParams& p) {
  if (samples.empty()) throw UsageError("total_energy: empty trajectory");
  TotalEnergy e;
  for (std::size_t i = 0; i < samples.size() && samples[i].t <= t; ++i) {
    e.E1 = std::max(e.E1, 2.0 * samples[i].h3_energy);
    if (i > 0) {
      e.E2 += 0.5 * (samples[i].t - samples[i - 1].t) *
              (e2_integrand(samples[i], p) + e2_integrand(samples[i - 1], p));
    }
  }
  e.E = e.E1 + e.E2;
  return e;
}

void write_ledger_header(std::ostream& out) {
  out << "t,basic_energy,l2_energy,h3_energy,diss_visc,diss_div,diss_mag,diss_a,cross_term,"
         "lyapunov,residual_l2_identity,canc_res_1,canc_res_2,canc_res_3,canc_res_4,min_rho,"
         "max_abs_a,div_b_norm\n";
}

void write_ledger_row(std::ostream& out, const EnergyReport& r) {
  const double values[] = {r.t,          r.basic_energy, r.l2_energy,  r.h3_energy,
                           r.diss_visc,  r.diss_div,     r.diss_mag,   r.diss_a,
                           r.cross_term, r.lyapunov,     r.residual_l2_identity,
                           r.cancellation_residuals[0], r.cancellation_residuals[1],
                           r.cancellation_residuals[2], r.cancellation_residuals[3],
                           r.min_rho,    r.max_abs_a,    r.div_b_norm};
  char buf[32];
  bool first = true;
  for (double v : values) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << (first ? "" : ",") << buf;
    first = false;
  }
  out << '\n';
}

void write_ledger_csv(std::ostream& out, const std::vector<EnergyReport>& samples) {
  write_ledger_header(out);
  for (const auto& r : samples) write_ledger_row(out, r);
}

}  // namespace amhd
