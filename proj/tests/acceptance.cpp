// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/QR>

#include "amhd/checkpoint.hpp"
#include "amhd/dynamics.hpp"
#include "amhd/experiment.hpp"
#include "amhd/inequality.hpp"
#include "amhd/simulation.hpp"
#include "amhd/spectral.hpp"
#include "oracles.hpp"

using namespace amhd;
namespace fs = std::filesystem;

namespace {

std::map<int, std::string> lines;
int failures = 0;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << ": " << detail << '\n';
  std::cerr << line.str() << std::flush;
  lines[id] = line.str();
  failures += !pass;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Largest |cross| / (|a|_H3 |u|_H3) over a ledger; 0 when every bound vanishes with the cross term.
double cross_ratio(const std::vector<EnergyReport>& reps) {
  double worst = 0.0;
  for (const auto& r : reps) {
    const double bound = r.a_h3 * r.u_h3;
    if (bound > 0.0) worst = std::max(worst, std::abs(r.cross_term) / bound);
    else if (r.cross_term != 0.0) worst = std::numeric_limits<double>::infinity();
  }
  return worst;
}

double rel_diff(const Field& a, const Field& b) {
  const double scale = std::max(a.max_abs(), b.max_abs());
  return scale == 0.0 ? 0.0 : oracle::max_abs_diff(a, b) / scale;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> csv_rows(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

RunResult small_data_run(double dt) {
  const State s0 = preset_initial_data("random_small", 1e-2, 1, Grid::cube(32));
  RunOptions ro;
  ro.dt = dt;
  ro.t_end = 5.0;
  ro.ledger_every = 1;
  ro.mode = Mode::full;
  ro.A = 16.0;
  ro.cancellations = false;
  return run(s0, PhysParams{}, ro);
}

std::complex<double> mode_100(const State& s) { return forward(s.a).at(0, 1, 0, 0); }

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::vector<EnergyReport>> all_ledgers;

  // Run 1 and its halved-dt companion, concurrently.
  const auto t_runs = std::chrono::steady_clock::now();
  auto half_future = std::async(std::launch::async, [] { return small_data_run(5e-4); });
  const RunResult run1 = small_data_run(1e-3);
  const RunResult run2 = half_future.get();
  const double runs_wall = seconds_since(t_runs);
  all_ledgers.push_back(run1.reports);
  all_ledgers.push_back(run2.reports);

  {
    const bool done = run1.cause == Termination::completed && run2.cause == Termination::completed;
    const double r1 = done ? energy_identity_residual(run1.reports, EnergyLaw::basic) : NAN;
    const double r2 = done ? energy_identity_residual(run2.reports, EnergyLaw::basic) : NAN;
    const double drop = r1 / r2;
    report(1, "basic energy identity", done && r1 <= 1e-4 && drop >= 8.0,
           "max residual " + fmt(r1) + " (<= 1e-4) over " + std::to_string(run1.reports.size()) +
               " samples, halved dt " + fmt(r2) + ", drop " + fmt(drop) + "x (>= 8), both runs " +
               fmt(runs_wall) + " s wall");
  }

  {
    const auto& reps = run1.reports;
    const double e0 = reps.front().basic_energy;
    double worst_increase = -std::numeric_limits<double>::infinity();
    double K = 0.0;
    for (std::size_t i = 1; i < reps.size(); ++i) worst_increase = std::max(worst_increase, reps[i].basic_energy - reps[i - 1].basic_energy);
    for (const auto& r : reps) K = std::max(K, r.h3_energy / reps.front().h3_energy);
    const bool done = run1.cause == Termination::completed;
    report(2, "monotone decay", done && worst_increase <= 1e-6 * e0 && K <= 4.0,
           "max per-sample increase " + fmt(worst_increase) + " (<= 1e-6 E(0) = " + fmt(1e-6 * e0) +
               "), E(5)/E(0) " + fmt(reps.back().basic_energy / e0) + ", K " + fmt(K) + " (<= 4)");
  }

  {
    const auto g = Grid::cube(16);
    PhysParams p;
    RunOptions ro;
    ro.mode = Mode::linear;
    ro.dt = 0.05;
    ro.t_end = 5.0;
    const State h0 = preset_initial_data("magnetic_horizontal", 1e-2, 1, g);
    const State v0 = preset_initial_data("magnetic_vertical", 1e-2, 1, g);
    double h_err = 0.0, v_err = 0.0;
    ro.on_sample = [&](const State& s, const EnergyReport&) {
      h_err = std::max(h_err, rel_diff(s.B, std::exp(-p.sigma * s.t) * h0.B));
    };
    const RunResult rh = run(h0, p, ro);
    ro.on_sample = [&](const State& s, const EnergyReport&) {
      v_err = std::max(v_err, std::abs(l2_norm(s.B) / l2_norm(v0.B) - 1.0));
    };
    const RunResult rv = run(v0, p, ro);
    all_ledgers.push_back(rh.reports);
    all_ledgers.push_back(rv.reports);
    const double h_final = rh.final_state ? l2_norm(rh.final_state->B) / l2_norm(h0.B) : NAN;
    report(3, "partial-diffusion anisotropy",
           rh.cause == Termination::completed && rv.cause == Termination::completed && h_err <= 1e-10 && v_err <= 1e-10,
           "horizontal probe vs exp(-sigma t) " + fmt(h_err) + " (<= 1e-10), |B(5)|/|B(0)| = " + fmt(h_final) +
               "; vertical probe |B| drift " + fmt(v_err) + " (<= 1e-10)");
  }

  {
    const auto g = Grid::cube(8);
    PhysParams p;
    p.mu = 0.25;
    p.lambda = 0.0;
    RunOptions ro;
    ro.mode = Mode::linear;
    ro.dt = 0.1;
    ro.t_end = 4.0;
    std::vector<std::complex<double>> x;
    ro.on_sample = [&](const State& s, const EnergyReport&) { x.push_back(mode_100(s)); };
    const RunResult r = run(preset_initial_data("acoustic_mode", 1e-3, 1, g), p, ro);
    all_ledgers.push_back(r.reports);
    // Prony fit of the two-term exponential sum x_n = c1 z1^n + c2 z2^n.
    Eigen::MatrixXcd A(x.size() - 2, 2);
    Eigen::VectorXcd b(x.size() - 2);
    for (std::size_t n = 0; n + 2 < x.size(); ++n) {
      A(n, 0) = x[n + 1];
      A(n, 1) = -x[n];
      b(n) = x[n + 2];
    }
    const Eigen::VectorXcd td = A.colPivHouseholderQr().solve(b);
    const std::complex<double> disc = std::sqrt(td(0) * td(0) - 4.0 * td(1));
    std::complex<double> l1 = std::log((td(0) + disc) / 2.0) / ro.dt;
    std::complex<double> l2 = std::log((td(0) - disc) / 2.0) / ro.dt;
    if (l1.imag() < l2.imag()) std::swap(l1, l2);
    const double nu = p.nu();
    const std::complex<double> root(-nu / 2.0, std::sqrt(1.0 - nu * nu / 4.0));
    const double err = std::max(std::abs(l1 - root), std::abs(l2 - std::conj(root)));
    std::ostringstream d;
    d.precision(12);
    d << "measured " << l1.real() << " +/- " << l1.imag() << "i vs roots " << root.real() << " +/- " << root.imag()
      << "i, error " << fmt(err) << " (<= 1e-8)";
    report(4, "acoustic wave structure", r.cause == Termination::completed && x.size() == 41 && err <= 1e-8, d.str());
  }

  {
    const auto g = Grid::cube(24);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      PhysParams p;
      p.mu = 0.8;
      p.lambda = 0.3;
      p.sigma = 1.3;
      p.gamma = k % 2 == 0 ? 2.0 : 1.4;
      const State s = oracle::random_state(g, 500 + k, 0.1, 4);
      const TimeDerivative prim = rhs_primitive(s, p);
      const ReformulatedRhs ref = rhs_reformulated(s, p);
      worst = std::max({worst, rel_diff(prim.da, ref.total.da), rel_diff(prim.du, ref.total.du),
                        rel_diff(prim.dB, ref.total.dB)});
    }
    report(5, "cross-formulation oracle", worst <= 1e-9,
           "50 states at 24^3 (gamma 2 and 1.4), worst relative difference " + fmt(worst) + " (<= 1e-9)");
  }

  {
    const auto g = Grid::cube(24);
    std::array<double, 4> worst{};
    for (int k = 0; k < 20; ++k) {
      const State s = oracle::random_state(g, 700 + k, 1.0, 7);
      const auto r = check_cancellations(s);
      for (int c = 0; c < 4; ++c) worst[c] = std::max(worst[c], r[c]);
    }
    const State w = oracle::random_state(g, 777, 1.0, 7);
    Field grad = gradient(random_bandlimited(g, 778, 7, 1.0));
    // Same scale as B, so the injection stays a small perturbation of it.
    grad *= 1.0 / grad.max_abs();
    std::vector<double> lx, ly;
    for (double delta : {1e-8, 1e-7, 1e-6, 1e-5}) {
      const Field B = w.B + delta * grad;
      lx.push_back(std::log(l2_norm(divergence(B))));
      ly.push_back(std::log(check_cancellations(State(0.0, w.a, w.u, B))[0]));
    }
    // Least-squares slope of log residual against log |div B|.
    double mx = 0, my = 0, sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i] / lx.size(), my += ly[i] / ly.size();
    for (std::size_t i = 0; i < lx.size(); ++i) sxy += (lx[i] - mx) * (ly[i] - my), sxx += (lx[i] - mx) * (lx[i] - mx);
    const double slope = sxy / sxx;
    const double max_res = *std::max_element(worst.begin(), worst.end());
    report(6, "cancellation identities", max_res <= 1e-9 && std::abs(slope - 1.0) <= 0.05,
           "20 samples at 24^3, residuals (i)-(iv) " + fmt(worst[0]) + " " + fmt(worst[1]) + " " + fmt(worst[2]) + " " +
               fmt(worst[3]) + " (<= 1e-9); log-log slope of (i) vs |div B| " + fmt(slope) + " (1 +/- 0.05)");
  }

  {
    IneqSweepConfig cfg;
    cfg.resolutions = {16, 32};
    cfg.seeds = 100;
    cfg.kmax = 4;
    cfg.spectrum_decay = 1.0;
    cfg.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const auto samples = ineq_sweep(cfg);
    bool finite = samples.size() == 2 * 100 * 4;
    for (const auto& s : samples) finite = finite && std::isfinite(s.ratio) && !s.vacuous;
    double c[2][2] = {};
    for (const IneqSummary& s : summarize(samples)) c[s.lemma - 1][s.resolution == 32] = s.c_emp;
    const double drift1 = std::abs(c[0][1] - c[0][0]) / c[0][0];
    const double drift2 = std::abs(c[1][1] - c[1][0]) / c[1][0];
    const auto g = Grid::cube(16);
    const Field f = Field::from_function(g, [](double x, double y, double z) { return std::sin(x) * std::sin(y) * std::sin(z); });
    const double r1 = check_ineq1(f, f, f).ratio;
    const double r2 = check_ineq2(f, f, f, Axis::x1, Axis::x3, Axis::x2).ratio;
    const bool sin_ok = std::abs(r1 - 0.1098) <= 1e-3 && std::abs(r2 - 0.1098) <= 1e-3;
    report(7, "trilinear inequality ensemble", finite && drift1 <= 0.2 && drift2 <= 0.2 && sin_ok,
           std::to_string(samples.size()) + " samples all finite: " + (finite ? "yes" : "no") + "; C_emp lemma 1 " +
               fmt(c[0][0]) + " -> " + fmt(c[0][1]) + " (drift " + fmt(drift1) + "), lemma 2 " + fmt(c[1][0]) + " -> " +
               fmt(c[1][1]) + " (drift " + fmt(drift2) + ") (<= 0.2); sine product " + fmt(r1) + ", " + fmt(r2) +
               " (0.1098 +/- 1e-3)");
  }

  {
    const fs::path root = fs::temp_directory_path() / "amhd_acceptance";
    fs::remove_all(root);
    const RunConfig cfg = parse_config(
        "[grid]\nn = 16\n[init]\npreset = random_small\nepsilon = 0.01\nseed = 7\n"
        "[time]\ndt = 0.01\nt_end = 0.4\nledger_every = 2\n[output]\ncheckpoint_every = 20\n");
    ExperimentOptions o;
    o.quiet = true;
    o.output_dir = root / "a";
    const ExperimentResult ra = run_experiment(cfg, o);
    o.output_dir = root / "b";
    const ExperimentResult rb = run_experiment(cfg, o);
    o.output_dir = root / "resume";
    const ExperimentResult rr = resume_experiment(root / "a" / "checkpoint_20.amhd", cfg, o);
    all_ledgers.push_back(ra.run.reports);
    all_ledgers.push_back(rr.run.reports);
    const bool ok_runs = ra.exit_code == 0 && rb.exit_code == 0 && rr.exit_code == 0;
    const bool csv_same = slurp(root / "a" / "ledger.csv") == slurp(root / "b" / "ledger.csv");
    const bool ckpt_same = slurp(root / "a" / "checkpoint_final.amhd") == slurp(root / "b" / "checkpoint_final.amhd");

    const auto full = csv_rows(root / "a" / "ledger.csv");
    const auto tail = csv_rows(root / "resume" / "ledger.csv");
    double resume_err = tail.empty() ? INFINITY : 0.0;
    const std::size_t offset = full.size() - tail.size();
    for (std::size_t i = 0; i < tail.size(); ++i)
      for (std::size_t c = 0; c < tail[i].size(); ++c)
        resume_err = std::max(resume_err, std::abs(full[offset + i][c] - tail[i][c]) / std::max(1.0, std::abs(full[offset + i][c])));
    const Checkpoint x = read_checkpoint(root / "a" / "checkpoint_final.amhd");
    const Checkpoint y = read_checkpoint(root / "resume" / "checkpoint_final.amhd");
    const double state_err = std::max({rel_diff(x.state.a, y.state.a), rel_diff(x.state.u, y.state.u), rel_diff(x.state.B, y.state.B)});

    IneqSweepConfig ic;
    ic.resolutions = {8, 16};
    ic.seeds = 5;
    ic.kmax = 2;
    std::ostringstream s1, s2;
    write_ineq_csv(s1, ineq_sweep(ic));
    ic.threads = 3;
    write_ineq_csv(s2, ineq_sweep(ic));
    const bool ineq_same = s1.str() == s2.str();
    fs::remove_all(root);
    report(9, "determinism and persistence",
           ok_runs && csv_same && ckpt_same && ineq_same && tail.size() == 11 && resume_err <= 1e-12 && state_err <= 1e-12,
           std::string("ledger CSV bit-identical: ") + (csv_same ? "yes" : "no") + ", checkpoint bit-identical: " +
               (ckpt_same ? "yes" : "no") + ", ineq CSV identical across thread counts: " + (ineq_same ? "yes" : "no") +
               "; resume vs uninterrupted: ledger " + fmt(resume_err) + ", final state " + fmt(state_err) + " (<= 1e-12)");
  }

  {
    double worst = 0.0;
    std::size_t samples = 0;
    for (const auto& l : all_ledgers) {
      worst = std::max(worst, cross_ratio(l));
      samples += l.size();
    }
    const auto& reps = run1.reports;
    const double L0 = reps.front().lyapunov;
    double rate = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < reps.size(); ++i) rate = std::max(rate, (reps[i].lyapunov - reps[i - 1].lyapunov) / (reps[i].t - reps[i - 1].t));
    // Cauchy-Schwarz may be attained to round-off, hence the 1e-12 margin.
    report(8, "cross-term bound and Lyapunov decay", worst <= 1.0 + 1e-12 && L0 > 0.0 && rate <= 1e-4 * L0,
           "max |cross| / (|a|_H3 |u|_H3) " + fmt(worst) + " (<= 1) over " + std::to_string(samples) +
               " samples; run 1 max dL/dt " + fmt(rate) + " (<= 1e-4 L(0) = " + fmt(1e-4 * L0) + ")");
  }

  std::ofstream file("acceptance_report.txt");
  for (const auto& [id, line] : lines) {
    std::cout << line;
    file << line;
  }
  std::cout << (failures == 0 ? "all criteria PASS" : std::to_string(failures) + " criteria FAIL") << " in "
            << fmt(seconds_since(start)) << " s\n";
  return failures == 0 ? 0 : 1;
}
