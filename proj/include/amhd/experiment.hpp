#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "amhd/config.hpp"
#include "amhd/simulation.hpp"

namespace amhd {

/// Named initial data scaled so |a|_{H3} + |u|_{H3} + |B|_{H3} = epsilon (equilibrium: 0).
///   equilibrium          zero state
///   random_small         random band-limited a, u, B (modes |m_i| <= kmax), B divergence-free
///   magnetic_horizontal  B proportional to (sin x2, 0, 0)
///   magnetic_vertical    B proportional to (sin x3, 0, 0)
///   acoustic_mode        a proportional to cos x1
/// sup|a| <= epsilon * (sum_k (1+|k|^2)^-3 / |box|)^(1/2), which is below epsilon / 8 on boxes
/// of side >= 2 pi. Data with sup|a| > 1/2 is a DomainError; unknown names are a UsageError.
State preset_initial_data(const std::string& name, double epsilon, std::uint64_t seed,
                          const GridPtr& grid, int kmax = 4, double spectrum_decay = 2.0);

struct ExperimentOptions {
  std::optional<std::filesystem::path> output_dir;  ///< overrides output.dir
  std::optional<std::uint64_t> seed;                ///< overrides init.seed
  bool quiet = false;
};

struct ExperimentResult {
  int exit_code = 0;
  Termination cause = Termination::completed;
  std::filesystem::path dir;
  RunResult run;
};

/// Runs a configured experiment and writes ledger.csv, checkpoint_<step>.amhd files,
/// checkpoint_final.amhd and manifest.txt into the output directory. The manifest is
/// written even when the run stops early. Exit code 0 on completion, 2 on a rejected
/// step, 1 on any other failure.
ExperimentResult run_experiment(const RunConfig& cfg, const ExperimentOptions& opt = {});

/// Continues from a checkpoint; state and physics come from the file, time stepping
/// and output from cfg. With an explicit dt the ledger keeps the original sampling grid.
ExperimentResult resume_experiment(const std::filesystem::path& checkpoint, const RunConfig& cfg,
                                   const ExperimentOptions& opt = {});

/// Inequality ensemble: writes ineq.csv (samples plus C_emp table) and manifest.txt.
int ineq_experiment(const RunConfig& cfg, const ExperimentOptions& opt = {});

}  // namespace amhd
