#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "amhd/physics.hpp"
#include "amhd/state.hpp"

namespace amhd {

/// Energy functionals of one state. Dissipation columns carry their coefficients;
/// the H^3 variants do not (they are weighted inside total_energy).
struct EnergyReport {
  double t = 0.0;
  double basic_energy = 0.0;  ///< 1/2 int (2 g(rho) + rho |u|^2 + |B|^2)
  double l2_energy = 0.0;     ///< 1/2 |(a, u, B)|_{L2}^2
  double h3_energy = 0.0;     ///< 1/2 |(a, u, B)|_{H3}^2
  double diss_visc = 0.0;     ///< mu |grad u|^2
  double diss_div = 0.0;      ///< (lambda + mu) |div u|^2
  double diss_mag = 0.0;      ///< sigma |grad_h B|^2
  double diss_a = 0.0;        ///< |grad a|_{H2}^2
  double diss_visc_h3 = 0.0;  ///< |grad u|_{H3}^2
  double diss_div_h3 = 0.0;   ///< |div u|_{H3}^2
  double diss_mag_h3 = 0.0;   ///< |grad_h B|_{H3}^2
  double cross_term = 0.0;
  double lyapunov = 0.0;
  double residual_l2_identity = 0.0;
  std::array<double, 4> cancellation_residuals{};
  double min_rho = 1.0;
  double max_abs_a = 0.0;
  double div_b_norm = 0.0;
  double a_h3 = 0.0, u_h3 = 0.0, b_h3 = 0.0;  ///< H^3 norms, for the cross-term bound

  double basic_dissipation() const { return diss_visc + diss_div + diss_mag; }
};

/// g(rho) = rho int_1^rho (P(tau) - P(1)) / tau^2 dtau.
double potential_energy_density(double rho, const PhysParams& p);

double basic_energy(const State& s, const PhysParams& p);
double basic_dissipation(const State& s, const PhysParams& p);
double l2_energy(const State& s);

struct H3Energies {
  double h3_energy = 0.0;
  double diss_a = 0.0;
  double diss_visc_h3 = 0.0;
  double diss_div_h3 = 0.0;
  double diss_mag_h3 = 0.0;
};
H3Energies h3_energies(const State& s);

/// sum_{k=0}^{2} int grad^k u . grad^k grad a, all index contractions.
double cross_term(const State& s);

/// A |(a, u, B)|_{H3}^2 + 2 cross_term; A <= 1 is a DomainError.
double lyapunov(const State& s, double A);

struct LedgerOptions {
  double A = 16.0;
  bool cancellations = true;
};

/// Every functional except the identity residual, which needs neighbouring samples.
EnergyReport make_report(const State& s, const PhysParams& p, const LedgerOptions& opt = {});

/// Which conserved-minus-dissipated quantity the identity residual tracks.
enum class EnergyLaw { basic, l2 };

/// Per-sample residual of E' + D = 0 over uniformly spaced samples. Row i uses the
/// window (i, i+1, i+2):
///   |(E_{i+2} - E_i) / 2h + (D_i + 4 D_{i+1} + D_{i+2}) / 6| / max(Dbar, E_{i+1} / 1)
/// and the last two rows repeat the final window. Fewer than 3 samples or uneven
/// spacing is a UsageError.
std::vector<double> identity_residuals(const std::vector<EnergyReport>& samples,
                                       EnergyLaw law = EnergyLaw::basic);
/// Largest per-sample residual.
double energy_identity_residual(const std::vector<EnergyReport>& samples,
                                EnergyLaw law = EnergyLaw::basic);
/// Stores identity_residuals into residual_l2_identity; no-op below 3 samples.
void fill_identity_residuals(std::vector<EnergyReport>& samples, EnergyLaw law = EnergyLaw::basic);

struct TotalEnergy {
  double E = 0.0;
  double E1 = 0.0;  ///< running max of |(a, u, B)|_{H3}^2
  double E2 = 0.0;  ///< trapezoid integral of the weighted H^3 dissipations
};
/// Uses the samples with time <= t. Empty input is a UsageError.
TotalEnergy total_energy(const std::vector<EnergyReport>& samples, double t, const PhysParams& p);
/// Weights of E2 applied to one report.
double e2_integrand(const EnergyReport& r, const PhysParams& p);

void write_ledger_header(std::ostream& out);
void write_ledger_row(std::ostream& out, const EnergyReport& r);
void write_ledger_csv(std::ostream& out, const std::vector<EnergyReport>& samples);

}  // namespace amhd
