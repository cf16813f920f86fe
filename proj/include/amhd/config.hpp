#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "amhd/grid.hpp"
#include "amhd/physics.hpp"
#include "amhd/stepper.hpp"

namespace amhd {

struct InitSpec {
  std::string preset = "equilibrium";
  double epsilon = 1e-2;
  std::uint64_t seed = 1;
  std::string checkpoint;  ///< non-empty: start from this file instead of a preset
  int kmax = 4;            ///< random_small band limit (capped at the dealias mask)
  double spectrum_decay = 2.0;
};

struct TimeSpec {
  std::optional<double> dt;  ///< unset: derived from the CFL limit of the initial state
  double t_end = 1.0;
  int ledger_every = 1;
  Mode mode = Mode::full;
  double cfl = 0.5;
};

struct OutputSpec {
  std::string dir = "amhd_out";
  long checkpoint_every = 0;
  double A = 16.0;
};

struct IneqSpec {
  int seeds = 100;
  std::uint64_t first_seed = 1;
  std::vector<int> resolutions{16, 32};
  int kmax = 4;
  double spectrum_decay = 1.0;
  int threads = 1;
};

struct RunConfig {
  std::array<int, 3> n{32, 32, 32};
  std::array<double, 3> l{Grid::two_pi, Grid::two_pi, Grid::two_pi};
  PhysParams physics;
  InitSpec init;
  TimeSpec time;
  OutputSpec output;
  IneqSpec ineq;
  /// Every key=value that appeared in the text, as "section.key" -> raw value.
  std::map<std::string, std::string> explicit_keys;
};

/// INI-style text: [section] headers, key = value lines, '#' or ';' comments.
/// Sections: grid, physics, init, time, output, ineq. Throws ParseError with the
/// key path and line of the first offending entry.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Applies the explicitly set keys of `overrides` on top of `base`, then revalidates.
RunConfig merge_config(const RunConfig& base, const std::string& override_text);

/// key=value lines reproducing the effective configuration.
std::string echo_config(const RunConfig& c);

const char* to_string(Mode m);

}  // namespace amhd
