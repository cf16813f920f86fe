#include "amhd/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "amhd/errors.hpp"

namespace amhd {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string key;  // section.key
  std::string value;
  int line;
};

double to_double(const Entry& e) {
  // Accept plain numbers and multiples of pi: "6.28", "2pi", "2*pi", "pi".
  std::string v = e.value;
  double factor = 1.0;
  if (v.size() >= 2 && v.compare(v.size() - 2, 2, "pi") == 0) {
    factor = M_PI;
    v = trim(v.substr(0, v.size() - 2));
    if (!v.empty() && v.back() == '*') v = trim(v.substr(0, v.size() - 1));
    if (v.empty()) v = "1";
  }
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x)) {
    throw ParseError(e.key, e.line, "expected a real number, got '" + e.value + "'");
  }
  return x * factor;
}

long to_long(const Entry& e) {
  long x = 0;
  const auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), x);
  if (ec != std::errc() || ptr != e.value.data() + e.value.size()) {
    throw ParseError(e.key, e.line, "expected an integer, got '" + e.value + "'");
  }
  return x;
}

std::vector<int> to_int_list(const Entry& e) {
  std::vector<int> out;
  std::stringstream ss(e.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(static_cast<int>(to_long({e.key, trim(item), e.line})));
  }
  if (out.empty()) throw ParseError(e.key, e.line, "expected a comma-separated list of integers");
  return out;
}

using Setter = std::function<void(RunConfig&, const Entry&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"grid.n", [](RunConfig& c, const Entry& e) { c.n.fill(static_cast<int>(to_long(e))); }},
      {"grid.n1", [](RunConfig& c, const Entry& e) { c.n[0] = static_cast<int>(to_long(e)); }},
      {"grid.n2", [](RunConfig& c, const Entry& e) { c.n[1] = static_cast<int>(to_long(e)); }},
      {"grid.n3", [](RunConfig& c, const Entry& e) { c.n[2] = static_cast<int>(to_long(e)); }},
      {"grid.l", [](RunConfig& c, const Entry& e) { c.l.fill(to_double(e)); }},
      {"grid.l1", [](RunConfig& c, const Entry& e) { c.l[0] = to_double(e); }},
      {"grid.l2", [](RunConfig& c, const Entry& e) { c.l[1] = to_double(e); }},
      {"grid.l3", [](RunConfig& c, const Entry& e) { c.l[2] = to_double(e); }},
      {"physics.mu", [](RunConfig& c, const Entry& e) { c.physics.mu = to_double(e); }},
      {"physics.lambda", [](RunConfig& c, const Entry& e) { c.physics.lambda = to_double(e); }},
      {"physics.sigma", [](RunConfig& c, const Entry& e) { c.physics.sigma = to_double(e); }},
      {"physics.gamma", [](RunConfig& c, const Entry& e) { c.physics.gamma = to_double(e); }},
      {"init.preset", [](RunConfig& c, const Entry& e) { c.init.preset = e.value; }},
      {"init.epsilon", [](RunConfig& c, const Entry& e) { c.init.epsilon = to_double(e); }},
      {"init.seed",
       [](RunConfig& c, const Entry& e) {
         const long s = to_long(e);
         if (s < 0) throw ParseError(e.key, e.line, "seed >= 0 required");
         c.init.seed = static_cast<std::uint64_t>(s);
       }},
      {"init.checkpoint", [](RunConfig& c, const Entry& e) { c.init.checkpoint = e.value; }},
      {"init.kmax", [](RunConfig& c, const Entry& e) { c.init.kmax = static_cast<int>(to_long(e)); }},
      {"init.spectrum_decay", [](RunConfig& c, const Entry& e) { c.init.spectrum_decay = to_double(e); }},
      {"time.dt", [](RunConfig& c, const Entry& e) { c.time.dt = to_double(e); }},
      {"time.t_end", [](RunConfig& c, const Entry& e) { c.time.t_end = to_double(e); }},
      {"time.ledger_every",
       [](RunConfig& c, const Entry& e) { c.time.ledger_every = static_cast<int>(to_long(e)); }},
      {"time.mode",
       [](RunConfig& c, const Entry& e) {
         if (e.value == "full") c.time.mode = Mode::full;
         else if (e.value == "linear") c.time.mode = Mode::linear;
         else throw ParseError(e.key, e.line, "mode must be 'full' or 'linear', got '" + e.value + "'");
       }},
      {"time.cfl", [](RunConfig& c, const Entry& e) { c.time.cfl = to_double(e); }},
      {"output.dir", [](RunConfig& c, const Entry& e) { c.output.dir = e.value; }},
      {"output.checkpoint_every", [](RunConfig& c, const Entry& e) { c.output.checkpoint_every = to_long(e); }},
      {"output.A", [](RunConfig& c, const Entry& e) { c.output.A = to_double(e); }},
      {"ineq.seeds", [](RunConfig& c, const Entry& e) { c.ineq.seeds = static_cast<int>(to_long(e)); }},
      {"ineq.first_seed",
       [](RunConfig& c, const Entry& e) {
         const long s = to_long(e);
         if (s < 0) throw ParseError(e.key, e.line, "first_seed >= 0 required");
         c.ineq.first_seed = static_cast<std::uint64_t>(s);
       }},
      {"ineq.resolutions", [](RunConfig& c, const Entry& e) { c.ineq.resolutions = to_int_list(e); }},
      {"ineq.kmax", [](RunConfig& c, const Entry& e) { c.ineq.kmax = static_cast<int>(to_long(e)); }},
      {"ineq.spectrum_decay", [](RunConfig& c, const Entry& e) { c.ineq.spectrum_decay = to_double(e); }},
      {"ineq.threads", [](RunConfig& c, const Entry& e) { c.ineq.threads = static_cast<int>(to_long(e)); }},
  };
  return table;
}

std::vector<Entry> tokenize(const std::string& text) {
  std::vector<Entry> out;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find_first_of("#;");
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError("", line, "malformed section header '" + s + "'");
      section = trim(s.substr(1, s.size() - 2));
      static const char* known[] = {"grid", "physics", "init", "time", "output", "ineq"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known)) {
        throw ParseError(section, line, "unknown section");
      }
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("", line, "expected key = value, got '" + s + "'");
    if (section.empty()) throw ParseError(trim(s.substr(0, eq)), line, "key outside any section");
    out.push_back({section + "." + trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line});
  }
  return out;
}

// Where each key was set, for attaching line numbers to validation failures.
using Lines = std::map<std::string, int>;

void check(bool ok, const std::string& key, const Lines& lines, const std::string& what) {
  if (ok) return;
  const auto it = lines.find(key);
  throw ParseError(key, it == lines.end() ? 0 : it->second, what);
}

void validate(const RunConfig& c, const Lines& lines) {
  for (int i = 0; i < 3; ++i) {
    const std::string k = "grid.n" + std::to_string(i + 1);
    const std::string key = lines.count(k) ? k : "grid.n";
    check(c.n[i] >= 4 && c.n[i] % 2 == 0, key, lines, "grid sizes must be even and >= 4");
    const std::string lk = lines.count("grid.l" + std::to_string(i + 1)) ? "grid.l" + std::to_string(i + 1) : "grid.l";
    check(c.l[i] > 0.0, lk, lines, "box lengths must be > 0");
  }
  check(c.physics.mu > 0.0, "physics.mu", lines, "mu > 0 violated");
  check(c.physics.nu() > 0.0, "physics.lambda", lines, "nu = lambda + 2 mu > 0 violated");
  check(c.physics.sigma > 0.0, "physics.sigma", lines, "sigma > 0 violated");
  check(c.physics.gamma >= 1.0, "physics.gamma", lines, "gamma >= 1 violated");
  static const char* presets[] = {"equilibrium", "random_small", "magnetic_horizontal",
                                  "magnetic_vertical", "acoustic_mode"};
  check(!c.init.checkpoint.empty() ||
            std::find(std::begin(presets), std::end(presets), c.init.preset) != std::end(presets),
        "init.preset", lines, "unknown preset '" + c.init.preset + "'");
  check(c.init.epsilon > 0.0, "init.epsilon", lines, "epsilon > 0 required");
  check(c.init.kmax >= 1, "init.kmax", lines, "kmax >= 1 required");
  check(c.init.spectrum_decay >= 0.0, "init.spectrum_decay", lines, "spectrum_decay >= 0 required");
  check(!c.time.dt || *c.time.dt > 0.0, "time.dt", lines, "dt > 0 required");
  check(c.time.t_end > 0.0, "time.t_end", lines, "t_end > 0 required");
  check(c.time.ledger_every >= 1, "time.ledger_every", lines, "ledger_every >= 1 required");
  check(c.time.cfl > 0.0, "time.cfl", lines, "cfl > 0 required");
  check(c.output.checkpoint_every >= 0, "output.checkpoint_every", lines, "checkpoint_every >= 0 required");
  check(c.output.A > 1.0, "output.A", lines, "A > 1 required");
  check(!c.output.dir.empty(), "output.dir", lines, "output directory must be non-empty");
  check(c.ineq.seeds >= 1, "ineq.seeds", lines, "seeds >= 1 required");
  for (int r : c.ineq.resolutions) check(r >= 4 && r % 2 == 0, "ineq.resolutions", lines, "resolutions must be even and >= 4");
  check(c.ineq.kmax >= 1, "ineq.kmax", lines, "kmax >= 1 required");
  check(c.ineq.threads >= 1, "ineq.threads", lines, "threads >= 1 required");
}

void apply(RunConfig& c, const std::vector<Entry>& entries, Lines& lines) {
  for (const Entry& e : entries) {
    const auto it = setters().find(e.key);
    if (it == setters().end()) throw ParseError(e.key, e.line, "unknown key");
    it->second(c, e);
    lines[e.key] = e.line;
    c.explicit_keys[e.key] = e.value;
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  Lines lines;
  apply(c, tokenize(text), lines);
  validate(c, lines);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", 0, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

RunConfig merge_config(const RunConfig& base, const std::string& override_text) {
  RunConfig c = base;
  Lines lines;
  apply(c, tokenize(override_text), lines);
  validate(c, lines);
  return c;
}

const char* to_string(Mode m) { return m == Mode::full ? "full" : "linear"; }

std::string echo_config(const RunConfig& c) {
  std::ostringstream o;
  o.precision(17);
  o << "grid.n1=" << c.n[0] << "\ngrid.n2=" << c.n[1] << "\ngrid.n3=" << c.n[2] << "\ngrid.l1=" << c.l[0]
    << "\ngrid.l2=" << c.l[1] << "\ngrid.l3=" << c.l[2] << "\nphysics.mu=" << c.physics.mu
    << "\nphysics.lambda=" << c.physics.lambda << "\nphysics.sigma=" << c.physics.sigma
    << "\nphysics.gamma=" << c.physics.gamma << "\ninit.preset=" << c.init.preset
    << "\ninit.epsilon=" << c.init.epsilon << "\ninit.seed=" << c.init.seed
    << "\ninit.checkpoint=" << c.init.checkpoint << "\ninit.kmax=" << c.init.kmax
    << "\ninit.spectrum_decay=" << c.init.spectrum_decay << "\ntime.dt=";
  if (c.time.dt) o << *c.time.dt;
  else o << "cfl";
  o << "\ntime.t_end=" << c.time.t_end
    << "\ntime.ledger_every=" << c.time.ledger_every << "\ntime.mode=" << to_string(c.time.mode)
    << "\ntime.cfl=" << c.time.cfl << "\noutput.dir=" << c.output.dir
    << "\noutput.checkpoint_every=" << c.output.checkpoint_every << "\noutput.A=" << c.output.A << '\n';
  return o.str();
}

}  // namespace amhd
