#include "amhd/simulation.hpp"

#include <cmath>

#include "amhd/errors.hpp"

namespace amhd {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::blow_up: return "blow_up";
    case Termination::vacuum: return "vacuum";
    case Termination::guard: return "guard";
    case Termination::cfl: return "cfl";
  }
  return "unknown";
}

Termination termination_of(RejectCause c) {
  switch (c) {
    case RejectCause::blow_up: return Termination::blow_up;
    case RejectCause::vacuum: return Termination::vacuum;
    case RejectCause::guard: return Termination::guard;
    case RejectCause::cfl: return Termination::cfl;
  }
  return Termination::blow_up;
}

RunResult run(const State& s0, const PhysParams& p, const RunOptions& opt) {
  p.validate();
  if (opt.ledger_every < 1) throw UsageError("run: ledger_every must be >= 1");
  if (opt.dt < 0.0) throw DomainError("run: dt > 0 required");

  RunResult res;
  res.dt = opt.dt > 0.0 ? opt.dt : 0.5 * stable_dt(s0, opt.cfl);
  const long nsteps = std::max(0L, std::lround((opt.t_end - s0.t) / res.dt));

  StepOptions so;
  so.mode = opt.mode;
  so.cfl = opt.cfl;
  so.vacuum_floor = opt.vacuum_floor;
  Stepper stepper(s0.grid_ptr(), p, so);
  const LedgerOptions lo{opt.A, opt.cancellations};

  auto sample = [&](const State& s) {
    res.reports.push_back(make_report(s, p, lo));
    if (opt.keep_states) res.states.push_back(s);
    if (opt.on_sample) opt.on_sample(s, res.reports.back());
  };

  State s = s0;
  if (!s.all_finite()) {
    res.cause = Termination::blow_up;
    res.diagnostic = "blow_up: initial state is not finite";
    res.failure_time = s.t;
    res.final_state = s;
    return res;
  }
  std::vector<long> sampled_at;
  auto sample_at = [&](const State& st, long global) {
    sample(st);
    sampled_at.push_back(global);
  };
  sample_at(s, opt.first_step);
  long global = opt.first_step;
  for (long i = 0; i < nsteps; ++i) {
    try {
      s = stepper.step(s, res.dt);
    } catch (const StepRejected& e) {
      res.cause = termination_of(e.cause());
      res.diagnostic = e.what();
      res.failure_time = e.time();
      break;
    }
    ++res.steps;
    global = opt.first_step + i + 1;
    if (global % opt.ledger_every == 0) sample_at(s, global);
    if (opt.checkpoint_every > 0 && global % opt.checkpoint_every == 0 && opt.on_checkpoint) {
      opt.on_checkpoint(s, global);
    }
  }
  // The last accepted state is always reported, even off the sampling schedule.
  if (sampled_at.back() != global) sample_at(s, global);
  res.final_state = s;

  // Residuals need uniform spacing: off-schedule samples (a resumed start, the final
  // state) borrow the value of the nearest on-schedule sample.
  std::vector<std::size_t> on;
  for (std::size_t i = 0; i < sampled_at.size(); ++i) {
    if (sampled_at[i] % opt.ledger_every == 0) on.push_back(i);
  }
  if (on.size() >= 3) {
    std::vector<EnergyReport> uniform;
    for (std::size_t i : on) uniform.push_back(res.reports[i]);
    fill_identity_residuals(uniform, energy_law(opt.mode));
    for (std::size_t i = 0, j = 0; i < res.reports.size(); ++i) {
      while (j + 1 < on.size() && on[j] < i) ++j;
      res.reports[i].residual_l2_identity = uniform[j].residual_l2_identity;
    }
  }
  return res;
}

}  // namespace amhd
