#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "amhd/checkpoint.hpp"
#include "amhd/errors.hpp"
#include "amhd/experiment.hpp"
#include "amhd/spectral.hpp"

using namespace amhd;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> manifest(const fs::path& dir) {
  std::map<std::string, std::string> m;
  std::istringstream in(slurp(dir / "manifest.txt"));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) m.emplace(line.substr(0, eq), line.substr(eq + 1));
  }
  return m;
}

int count_lines_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) n += line.rfind(prefix, 0) == 0;
  return n;
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

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("amhd_test_" + name);
  fs::remove_all(p);
  return p;
}

ExperimentOptions quiet_to(const fs::path& dir) {
  ExperimentOptions o;
  o.output_dir = dir;
  o.quiet = true;
  return o;
}

}  // namespace

TEST_CASE("presets") {
  const auto g = Grid::cube(16);
  const double eps = 1e-2;
  const State eq = preset_initial_data("equilibrium", eps, 1, g);
  CHECK(eq.a.max_abs() == 0.0);
  CHECK(eq.u.max_abs() == 0.0);
  CHECK(eq.B.max_abs() == 0.0);

  for (const char* name : {"random_small", "magnetic_horizontal", "magnetic_vertical", "acoustic_mode"}) {
    CAPTURE(name);
    const State s = preset_initial_data(name, eps, 3, g);
    const double total = sobolev_norm(s.a, 3.0) + sobolev_norm(s.u, 3.0) + sobolev_norm(s.B, 3.0);
    CHECK(std::abs(total - eps) <= 1e-12 * eps);
    CHECK(l2_norm(divergence(s.B)) <= 1e-12);
    CHECK(s.max_abs_a() <= eps / 8);
  }
  const State v = preset_initial_data("magnetic_vertical", eps, 1, g);
  CHECK(v.a.max_abs() == 0.0);
  CHECK(v.u.max_abs() == 0.0);
  CHECK(v.B.component(1).abs().maxCoeff() == 0.0);
  CHECK(v.B.component(2).abs().maxCoeff() == 0.0);
  // B1 = c sin x3: compare against the analytic profile.
  const double c = v.B.max_abs();
  const Field want = Field::from_function(g, [&](double, double, double z) { return c * std::sin(z); });
  CHECK((v.B.component(0) - want.component(0)).abs().maxCoeff() <= 1e-15);

  const State r1 = preset_initial_data("random_small", eps, 5, g);
  const State r2 = preset_initial_data("random_small", eps, 5, g);
  CHECK((r1.u.samples() == r2.u.samples()).all());
  CHECK((r1.u.samples() != preset_initial_data("random_small", eps, 6, g).u.samples()).any());

  CHECK_THROWS_AS(preset_initial_data("vortex", eps, 1, g), UsageError);
  CHECK_THROWS_AS(preset_initial_data("acoustic_mode", 100.0, 1, g), DomainError);
}

TEST_CASE("equilibrium run writes an all-zero ledger") {
  const fs::path dir = scratch("equilibrium");
  const RunConfig cfg = parse_config("[grid]\nn = 8\n[time]\ndt = 0.01\nt_end = 0.05\n");
  const ExperimentResult r = run_experiment(cfg, quiet_to(dir));
  CHECK(r.exit_code == 0);
  CHECK(r.cause == Termination::completed);
  const auto rows = csv_rows(dir / "ledger.csv");
  CHECK(rows.size() == 6);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 18);
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (c == 15) CHECK(row[c] == 1.0);  // min_rho
      else CHECK(row[c] == 0.0);
    }
  }
  const auto m = manifest(dir);
  CHECK(m.at("termination") == "completed");
  CHECK(m.at("steps") == "5");
  CHECK(m.count("wall_time_s") == 1);
  CHECK(m.count("K_E") == 1);
  CHECK(m.at("init.preset") == "equilibrium");
  CHECK(fs::exists(dir / "checkpoint_final.amhd"));
  fs::remove_all(dir);
}

TEST_CASE("vertical field is not diffused") {
  const fs::path dir = scratch("vertical");
  const RunConfig cfg = parse_config(
      "[grid]\nn = 8\n[init]\npreset = magnetic_vertical\nepsilon = 0.1\n"
      "[time]\ndt = 0.05\nt_end = 1\nmode = linear\n");
  const ExperimentResult r = run_experiment(cfg, quiet_to(dir));
  REQUIRE(r.exit_code == 0);
  const auto& reps = r.run.reports;
  REQUIRE(reps.size() == 21);
  for (const auto& x : reps) {
    CHECK(x.diss_mag == 0.0);
    CHECK(std::abs(x.l2_energy - reps.front().l2_energy) <= 1e-14 * reps.front().l2_energy);
  }
  fs::remove_all(dir);
}

TEST_CASE("a rejected step still yields a manifest naming the cause") {
  const fs::path dir = scratch("rejected");
  const RunConfig cfg = parse_config(
      "[grid]\nn = 8\n[init]\npreset = acoustic_mode\nepsilon = 0.1\n[time]\ndt = 5\nt_end = 10\n");
  const ExperimentResult r = run_experiment(cfg, quiet_to(dir));
  CHECK(r.exit_code == 2);
  CHECK(r.cause == Termination::cfl);
  const std::string text = slurp(dir / "manifest.txt");
  CHECK(count_lines_starting(text, "termination=") == 1);
  CHECK(manifest(dir).at("termination") == "cfl");
  CHECK(manifest(dir).at("diagnostic").find("CFL") != std::string::npos);
  CHECK(csv_rows(dir / "ledger.csv").size() == 1);
  fs::remove_all(dir);
}

TEST_CASE("runs are deterministic and resume continues the trajectory") {
  const std::string text =
      "[grid]\nn = 16\n[init]\npreset = random_small\nepsilon = 0.01\nseed = 4\n"
      "[time]\ndt = 0.01\nt_end = 0.2\nledger_every = 2\n[output]\ncheckpoint_every = 10\n";
  const RunConfig cfg = parse_config(text);
  const fs::path d1 = scratch("det1"), d2 = scratch("det2"), d3 = scratch("resume");
  REQUIRE(run_experiment(cfg, quiet_to(d1)).exit_code == 0);
  REQUIRE(run_experiment(cfg, quiet_to(d2)).exit_code == 0);
  CHECK(slurp(d1 / "ledger.csv") == slurp(d2 / "ledger.csv"));
  CHECK(slurp(d1 / "checkpoint_final.amhd") == slurp(d2 / "checkpoint_final.amhd"));
  CHECK(slurp(d1 / "checkpoint_10.amhd") == slurp(d2 / "checkpoint_10.amhd"));

  ExperimentOptions other = quiet_to(d3);
  other.seed = 5;
  REQUIRE(run_experiment(cfg, other).exit_code == 0);
  CHECK(slurp(d1 / "ledger.csv") != slurp(d3 / "ledger.csv"));
  fs::remove_all(d3);

  const ExperimentResult res = resume_experiment(d1 / "checkpoint_10.amhd", cfg, quiet_to(d3));
  REQUIRE(res.exit_code == 0);
  CHECK(manifest(d3).at("physics_source") == "checkpoint");
  const auto full = csv_rows(d1 / "ledger.csv");
  const auto tail = csv_rows(d3 / "ledger.csv");
  REQUIRE(full.size() == 11);
  REQUIRE(tail.size() == 6);
  for (std::size_t i = 0; i < tail.size(); ++i) {
    const auto& a = full[5 + i];
    const auto& b = tail[i];
    CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-14));
    for (std::size_t c = 1; c < a.size(); ++c) {
      CAPTURE(c);
      CHECK(std::abs(a[c] - b[c]) <= 1e-12 * std::max(1.0, std::abs(a[c])));
    }
  }
  const Checkpoint x = read_checkpoint(d1 / "checkpoint_final.amhd");
  const Checkpoint y = read_checkpoint(d3 / "checkpoint_final.amhd");
  CHECK((x.state.u.samples() - y.state.u.samples()).abs().maxCoeff() <= 1e-12 * x.state.u.max_abs());
  fs::remove_all(d1);
  fs::remove_all(d2);
  fs::remove_all(d3);
}

TEST_CASE("inequality experiment") {
  const fs::path dir = scratch("ineq");
  const RunConfig cfg = parse_config("[ineq]\nseeds = 2\nresolutions = 8\nkmax = 2\n");
  CHECK(ineq_experiment(cfg, quiet_to(dir)) == 0);
  const auto m = manifest(dir);
  CHECK(m.at("termination") == "completed");
  CHECK(m.at("samples") == "8");
  CHECK(std::stod(m.at("c_emp_lemma1_n8")) > 0.0);
  CHECK(std::stod(m.at("c_emp_lemma2_n8")) > 0.0);
  CHECK(fs::exists(dir / "ineq.csv"));
  fs::remove_all(dir);
}
