#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "amhd/errors.hpp"
#include "amhd/ledger.hpp"
#include "amhd/stepper.hpp"

namespace amhd {

enum class Termination { completed, blow_up, vacuum, guard, cfl };

const char* to_string(Termination t);
Termination termination_of(RejectCause c);

struct RunOptions {
  double dt = 0.0;  ///< 0: half the CFL limit of the initial state
  double t_end = 1.0;
  int ledger_every = 1;
  Mode mode = Mode::full;
  double A = 16.0;
  double cfl = 0.5;
  double vacuum_floor = 1e-6;
  bool cancellations = true;
  bool keep_states = false;  ///< store every ledger-sampled state
  /// Global index of the first step, so a resumed run samples on the original schedule.
  long first_step = 0;
  long checkpoint_every = 0;  ///< 0: never

  std::function<void(const State&, const EnergyReport&)> on_sample;
  std::function<void(const State&, long step)> on_checkpoint;
};

struct RunResult {
  std::vector<EnergyReport> reports;
  std::vector<State> states;
  std::optional<State> final_state;
  Termination cause = Termination::completed;
  std::string diagnostic;
  double failure_time = 0.0;
  long steps = 0;  ///< accepted steps in this call
  double dt = 0.0;
};

/// Energy law whose identity holds for the given mode.
inline EnergyLaw energy_law(Mode m) { return m == Mode::full ? EnergyLaw::basic : EnergyLaw::l2; }

/// Steps from s0.t to t_end (round((t_end - t0)/dt) steps), sampling the ledger at
/// global steps divisible by ledger_every and after the last step. A rejected step
/// ends the run; the partial trajectory and its cause are returned, never thrown.
RunResult run(const State& s0, const PhysParams& p, const RunOptions& opt);

}  // namespace amhd
