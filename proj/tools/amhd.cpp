// Command-line front end: run, resume, ineq-sweep, validate.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "amhd/errors.hpp"
#include "amhd/experiment.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw amhd::ParseError("", 0, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral compressible MHD with horizontal magnetic diffusion"};
  app.require_subcommand(1);

  std::string output_dir;
  bool quiet = false;
  std::int64_t seed_override = -1;
  app.add_option("--output-dir", output_dir, "Directory for ledger, checkpoints and manifest");
  app.add_flag("--quiet", quiet, "Suppress progress output");
  app.add_option("--seed-override", seed_override, "Replace the configured seed")->check(CLI::NonNegativeNumber);

  std::string config_path, checkpoint_path;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path)->required();
  auto* resume = app.add_subcommand("resume", "Continue a run from a checkpoint");
  resume->add_option("checkpoint", checkpoint_path)->required();
  resume->add_option("config-overrides", config_path, "Config with time/output settings");
  auto* sweep = app.add_subcommand("ineq-sweep", "Random ensemble for the trilinear inequalities");
  sweep->add_option("config", config_path)->required();
  auto* validate = app.add_subcommand("validate", "Parse and check a config file");
  validate->add_option("config", config_path)->required();

  // Global flags may follow the verb.
  for (auto* sub : {run, resume, sweep, validate}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  amhd::ExperimentOptions opt;
  if (!output_dir.empty()) opt.output_dir = output_dir;
  if (seed_override >= 0) opt.seed = static_cast<std::uint64_t>(seed_override);
  opt.quiet = quiet;

  try {
    if (*validate) {
      const amhd::RunConfig cfg = amhd::load_config(config_path);
      if (!quiet) std::cout << amhd::echo_config(cfg);
      return 0;
    }
    if (*run) return amhd::run_experiment(amhd::load_config(config_path), opt).exit_code;
    if (*resume) {
      const amhd::RunConfig cfg =
          config_path.empty() ? amhd::RunConfig{} : amhd::parse_config(read_file(config_path));
      return amhd::resume_experiment(checkpoint_path, cfg, opt).exit_code;
    }
    if (*sweep) return amhd::ineq_experiment(amhd::load_config(config_path), opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
