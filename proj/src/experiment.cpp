#include "amhd/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "amhd/checkpoint.hpp"
#include "amhd/errors.hpp"
#include "amhd/inequality.hpp"
#include "amhd/spectral.hpp"

namespace fs = std::filesystem;

namespace amhd {

namespace {

double h3(const Field& f) { return sobolev_norm(f, 3.0); }

Field sine_field(const GridPtr& g, Axis axis, bool cosine) {
  const double k = Grid::two_pi / g->length(axis);
  const int i = index_of(axis);
  return Field::from_function(g, [=](double x1, double x2, double x3) {
    const double x[3] = {x1, x2, x3};
    return cosine ? std::cos(k * x[i]) : std::sin(k * x[i]);
  });
}

Field first_component(const Field& s) {
  const Field zero = Field::scalar(s.grid_ptr());
  return stack(s, zero, zero);
}

struct Summary {
  double max_residual = 0.0;
  std::array<double, 4> max_canc{};
  double K_h3 = 0.0;
  double K_E = 0.0;
  double max_energy_increase = 0.0;
  double max_cross_ratio = 0.0;
  double max_lyapunov_rate = 0.0;
  TotalEnergy total;
  double max_div_b = 0.0;
};

Summary summarize_run(const RunResult& r, const PhysParams& p) {
  Summary s;
  if (r.reports.empty()) return s;
  const EnergyReport& first = r.reports.front();
  const TotalEnergy e0 = total_energy(r.reports, first.t, p);
  for (std::size_t i = 0; i < r.reports.size(); ++i) {
    const EnergyReport& x = r.reports[i];
    s.max_residual = std::max(s.max_residual, x.residual_l2_identity);
    for (int c = 0; c < 4; ++c) s.max_canc[c] = std::max(s.max_canc[c], x.cancellation_residuals[c]);
    if (first.h3_energy > 0.0) s.K_h3 = std::max(s.K_h3, x.h3_energy / first.h3_energy);
    const double bound = x.a_h3 * x.u_h3;
    if (bound > 0.0) s.max_cross_ratio = std::max(s.max_cross_ratio, std::abs(x.cross_term) / bound);
    s.max_div_b = std::max(s.max_div_b, x.div_b_norm);
    if (i > 0) {
      const EnergyReport& prev = r.reports[i - 1];
      s.max_energy_increase = std::max(s.max_energy_increase, x.basic_energy - prev.basic_energy);
      const double dt = x.t - prev.t;
      if (dt > 0.0) s.max_lyapunov_rate = std::max(s.max_lyapunov_rate, (x.lyapunov - prev.lyapunov) / dt);
    }
  }
  s.total = total_energy(r.reports, r.reports.back().t, p);
  if (e0.E > 0.0) s.K_E = s.total.E / e0.E;
  return s;
}

void write_manifest(const fs::path& dir, const std::string& cfg_echo, const std::string& extra) {
  std::ofstream m(dir / "manifest.txt");
  if (!m) throw std::runtime_error("cannot write " + (dir / "manifest.txt").string());
  m << extra << cfg_echo;
}

std::string run_manifest(const RunResult& r, const PhysParams& p, double wall, const std::string& phys_source) {
  const Summary s = summarize_run(r, p);
  std::ostringstream o;
  o.precision(17);
  o << "termination=" << to_string(r.cause) << '\n'
    << "diagnostic=" << r.diagnostic << '\n'
    << "failure_time=" << (r.cause == Termination::completed ? 0.0 : r.failure_time) << '\n'
    << "steps=" << r.steps << '\n'
    << "dt=" << r.dt << '\n'
    << "t_final=" << (r.final_state ? r.final_state->t : 0.0) << '\n'
    << "wall_time_s=" << wall << '\n'
    << "samples=" << r.reports.size() << '\n'
    << "physics_source=" << phys_source << '\n'
    << "max_residual_l2_identity=" << s.max_residual << '\n';
  for (int c = 0; c < 4; ++c) o << "max_canc_res_" << c + 1 << '=' << s.max_canc[c] << '\n';
  o << "max_basic_energy_increase=" << s.max_energy_increase << '\n'
    << "K_h3=" << s.K_h3 << '\n'
    << "K_E=" << s.K_E << '\n'
    << "E=" << s.total.E << "\nE1=" << s.total.E1 << "\nE2=" << s.total.E2 << '\n'
    << "max_cross_ratio=" << s.max_cross_ratio << '\n'
    << "max_lyapunov_rate=" << s.max_lyapunov_rate << '\n'
    << "max_div_b_norm=" << s.max_div_b << '\n';
  return o.str();
}

fs::path prepare_dir(const RunConfig& cfg, const ExperimentOptions& opt) {
  const fs::path dir = opt.output_dir ? *opt.output_dir : fs::path(cfg.output.dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

ExperimentResult execute(const State& s0, const PhysParams& p, const RunConfig& cfg, const ExperimentOptions& opt,
                         long first_step, const std::string& phys_source) {
  ExperimentResult out;
  out.dir = prepare_dir(cfg, opt);
  const auto start = std::chrono::steady_clock::now();
  const std::string echo = echo_config(cfg);
  try {
    RunOptions ro;
    ro.dt = cfg.time.dt.value_or(0.0);
    ro.t_end = cfg.time.t_end;
    ro.ledger_every = cfg.time.ledger_every;
    ro.mode = cfg.time.mode;
    ro.A = cfg.output.A;
    ro.cfl = cfg.time.cfl;
    ro.first_step = first_step;
    ro.checkpoint_every = cfg.output.checkpoint_every;
    ro.on_checkpoint = [&](const State& s, long step) {
      write_checkpoint(out.dir / ("checkpoint_" + std::to_string(step) + ".amhd"), s, p);
    };
    if (!opt.quiet) {
      ro.on_sample = [](const State& s, const EnergyReport& r) {
        std::cerr << "t=" << s.t << " E=" << r.basic_energy << " h3=" << r.h3_energy << '\n';
      };
    }
    out.run = run(s0, p, ro);
    out.cause = out.run.cause;
    {
      std::ofstream csv(out.dir / "ledger.csv");
      if (!csv) throw std::runtime_error("cannot write " + (out.dir / "ledger.csv").string());
      write_ledger_csv(csv, out.run.reports);
    }
    if (out.run.final_state) write_checkpoint(out.dir / "checkpoint_final.amhd", *out.run.final_state, p);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(out.dir, echo, run_manifest(out.run, p, wall, phys_source));
    out.exit_code = out.cause == Termination::completed ? 0 : 2;
    if (!opt.quiet) {
      std::cout << "termination=" << to_string(out.cause) << " steps=" << out.run.steps
                << " output=" << out.dir.string() << '\n';
    }
  } catch (const std::exception& e) {
    // Never leave a run without a manifest.
    std::ostringstream o;
    o << "termination=error\ndiagnostic=" << e.what() << '\n';
    try {
      write_manifest(out.dir, echo, o.str());
    } catch (const std::exception&) {
    }
    std::cerr << "error: " << e.what() << '\n';
    out.cause = Termination::blow_up;
    out.exit_code = 1;
  }
  return out;
}

}  // namespace

State preset_initial_data(const std::string& name, double epsilon, std::uint64_t seed, const GridPtr& grid,
                          int kmax, double spectrum_decay) {
  State s(grid);
  if (name == "equilibrium") return s;
  if (!(epsilon > 0.0)) throw DomainError("preset: epsilon > 0 required");
  if (name == "magnetic_horizontal") {
    s.B = first_component(sine_field(grid, Axis::x2, false));
  } else if (name == "magnetic_vertical") {
    s.B = first_component(sine_field(grid, Axis::x3, false));
  } else if (name == "acoustic_mode") {
    s.a = sine_field(grid, Axis::x1, true);
  } else if (name == "random_small") {
    int k = kmax;
    for (Axis a : {Axis::x1, Axis::x2, Axis::x3}) k = std::min(k, grid->kmax(a));
    s.a = random_bandlimited(grid, 4 * seed, k, spectrum_decay);
    s.u = random_bandlimited_vector(grid, 4 * seed + 1, k, spectrum_decay);
    s.B = project_divfree(random_bandlimited_vector(grid, 4 * seed + 2, k, spectrum_decay));
  } else {
    throw UsageError("unknown preset '" + name + "'");
  }
  const double total = h3(s.a) + h3(s.u) + h3(s.B);
  const double c = epsilon / total;
  s.a *= c;
  s.u *= c;
  s.B *= c;
  if (s.max_abs_a() > 0.5) throw DomainError("preset: sup|a| > 1/2, reduce epsilon");
  return s;
}

ExperimentResult run_experiment(const RunConfig& cfg, const ExperimentOptions& opt) {
  if (!cfg.init.checkpoint.empty()) return resume_experiment(cfg.init.checkpoint, cfg, opt);
  cfg.physics.validate();
  const GridPtr grid = Grid::make(cfg.n, cfg.l);
  const std::uint64_t seed = opt.seed.value_or(cfg.init.seed);
  const State s0 = preset_initial_data(cfg.init.preset, cfg.init.epsilon, seed, grid, cfg.init.kmax,
                                       cfg.init.spectrum_decay);
  return execute(s0, cfg.physics, cfg, opt, 0, "config");
}

ExperimentResult resume_experiment(const fs::path& checkpoint, const RunConfig& cfg, const ExperimentOptions& opt) {
  Checkpoint ck = read_checkpoint(checkpoint);
  long first_step = 0;
  if (cfg.time.dt) first_step = std::lround(ck.state.t / *cfg.time.dt);
  RunConfig effective = cfg;
  effective.n = ck.state.grid().dims();
  effective.l = ck.state.grid().lengths();
  effective.physics = ck.params;
  effective.init.checkpoint = checkpoint.string();
  return execute(ck.state, ck.params, effective, opt, first_step, "checkpoint");
}

int ineq_experiment(const RunConfig& cfg, const ExperimentOptions& opt) {
  const fs::path dir = prepare_dir(cfg, opt);
  const auto start = std::chrono::steady_clock::now();
  IneqSweepConfig sc;
  sc.resolutions = cfg.ineq.resolutions;
  sc.seeds = cfg.ineq.seeds;
  sc.first_seed = opt.seed.value_or(cfg.ineq.first_seed);
  sc.kmax = cfg.ineq.kmax;
  sc.spectrum_decay = cfg.ineq.spectrum_decay;
  sc.threads = cfg.ineq.threads;
  sc.box = cfg.l;
  std::ostringstream o;
  o.precision(17);
  int code = 0;
  try {
    const auto samples = ineq_sweep(sc);
    std::ofstream csv(dir / "ineq.csv");
    if (!csv) throw std::runtime_error("cannot write " + (dir / "ineq.csv").string());
    write_ineq_csv(csv, samples);
    o << "termination=completed\nsamples=" << samples.size() << '\n';
    for (const IneqSummary& s : summarize(samples)) {
      o << "c_emp_lemma" << s.lemma << "_n" << s.resolution << '=' << s.c_emp << '\n'
        << "vacuous_lemma" << s.lemma << "_n" << s.resolution << '=' << s.vacuous << '\n';
      if (!opt.quiet) std::cout << "lemma " << s.lemma << " n=" << s.resolution << " C_emp=" << s.c_emp << '\n';
    }
  } catch (const std::exception& e) {
    o << "termination=error\ndiagnostic=" << e.what() << '\n';
    std::cerr << "error: " << e.what() << '\n';
    code = 1;
  }
  o << "wall_time_s=" << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << '\n';
  write_manifest(dir, echo_config(cfg), o.str());
  return code;
}

}  // namespace amhd
