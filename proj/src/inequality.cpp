#include "amhd/inequality.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include "amhd/errors.hpp"
#include "amhd/spectral.hpp"

namespace amhd {

namespace {

const Complex I(0.0, 1.0);

GridPtr refined(const Grid& g) {
  static std::mutex m;
  static std::map<std::pair<std::array<int, 3>, std::array<double, 3>>, GridPtr> cache;
  std::lock_guard lock(m);
  const auto key = std::make_pair(g.dims(), g.lengths());
  auto it = cache.find(key);
  if (it == cache.end()) {
    const auto& n = g.dims();
    it = cache.emplace(key, Grid::make({2 * n[0], 2 * n[1], 2 * n[2]}, g.lengths())).first;
  }
  return it->second;
}

double abs_triple_integral(const Field& f, const Field& g, const Field& h) {
  const Eigen::ArrayXd prod = (f.component(0) * g.component(0) * h.component(0)).abs();
  return f.grid().volume() * prod.mean();
}

// L2 norm of d_axes f for a list of derivative axes (empty list = plain norm).
double derivative_norm(const SpectralField& F, std::initializer_list<Axis> axes) {
  Eigen::ArrayXd m = Eigen::ArrayXd::Ones(static_cast<Eigen::Index>(F.grid().spectral_size()));
  for (Axis a : axes) m *= F.grid().k(a).square();
  return std::sqrt(std::max(0.0, spectral_sum(F, F, m)));
}

struct Factor {
  double base;        // the underived norm the factor belongs to
  double value;       // the norm itself
  double exponent;
};

IneqSample finish(const Field& f, const Field& g, const Field& h, const std::vector<Factor>& factors,
                  int lemma, std::array<Axis, 3> axes) {
  require_rank(f.rank(), Rank::scalar, "inequality");
  require_rank(g.rank(), Rank::scalar, "inequality");
  require_rank(h.rank(), Rank::scalar, "inequality");
  require_same_grid(f.grid(), g.grid(), "inequality");
  require_same_grid(f.grid(), h.grid(), "inequality");

  IneqSample out;
  out.lemma = lemma;
  out.axes = axes;
  out.resolution = f.grid().n(Axis::x1);

  const GridPtr fine = refined(f.grid());
  out.lhs = abs_triple_integral(resample(f, fine), resample(g, fine), resample(h, fine));
  out.quadrature_error = std::abs(out.lhs - abs_triple_integral(f, g, h));

  double rhs = 1.0;
  bool zero_factor = false;
  for (const Factor& fac : factors) {
    // Round-off leaves ~1e-17 coefficients on exact zero-modes.
    const bool zero = fac.value <= 1e-12 * fac.base || fac.value == 0.0;
    zero_factor = zero_factor || zero;
    rhs *= zero ? 0.0 : std::pow(fac.value, fac.exponent);
  }
  out.rhs_no_c = rhs;
  const double lhs_floor = 1e-12 * f.grid().volume() * f.max_abs() * g.max_abs() * h.max_abs();
  if (rhs > 0.0) {
    out.ratio = out.lhs / rhs;
  } else if (out.lhs > lhs_floor) {
    out.vacuous = zero_factor;
    out.ratio = std::numeric_limits<double>::infinity();
  } else {
    out.lhs = 0.0;
    out.ratio = 0.0;
  }
  return out;
}

std::vector<std::array<int, 3>> multi_indices(int order) {
  std::vector<std::array<int, 3>> out;
  for (int a1 = order; a1 >= 0; --a1) {
    for (int a2 = order - a1; a2 >= 0; --a2) out.push_back({a1, a2, order - a1 - a2});
  }
  return out;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// i^|alpha| k^alpha as a per-mode multiplier.
Eigen::ArrayXcd multi_derivative(const Grid& g, const std::array<int, 3>& alpha) {
  Eigen::ArrayXcd m = Eigen::ArrayXcd::Ones(static_cast<Eigen::Index>(g.spectral_size()));
  for (int a = 0; a < 3; ++a) {
    for (int r = 0; r < alpha[a]; ++r) m *= I * g.k(static_cast<Axis>(a));
  }
  return m;
}

Eigen::ArrayXd samples_of(const Grid& g, const Eigen::ArrayXcd& coeffs) {
  Eigen::ArrayXd out(static_cast<Eigen::Index>(g.size()));
  g.inverse(coeffs.data(), out.data());
  return out;
}

double normalised(double sum, std::initializer_list<double> parts) {
  double scale = 0.0;
  for (double p : parts) scale = std::max(scale, std::abs(p));
  return scale > 0.0 ? std::abs(sum) / scale : 0.0;
}

}  // namespace

Field random_bandlimited(const GridPtr& grid, std::uint64_t seed, int kmax, double spectrum_decay,
                         bool include_zero_mode) {
  const Grid& g = *grid;
  if (kmax < 0) throw UsageError("random_bandlimited: kmax must be nonnegative");
  for (Axis a : {Axis::x1, Axis::x2, Axis::x3}) {
    if (kmax > g.kmax(a)) {
      throw UsageError("random_bandlimited: kmax = " + std::to_string(kmax) +
                       " exceeds dealias limit " + std::to_string(g.kmax(a)));
    }
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;

  SpectralField F(grid, Rank::scalar);
  auto& c = F.coefficients();
  const double k1u = Grid::two_pi / g.length(Axis::x1);
  const double k2u = Grid::two_pi / g.length(Axis::x2);
  const double k3u = Grid::two_pi / g.length(Axis::x3);
  for (int m1 = -kmax; m1 <= kmax; ++m1) {
    for (int m2 = -kmax; m2 <= kmax; ++m2) {
      for (int m3 = 0; m3 <= kmax; ++m3) {
        // One representative per +-k pair; its partner is the conjugate.
        const bool zero = m1 == 0 && m2 == 0 && m3 == 0;
        const bool representative = m3 > 0 || m2 > 0 || (m2 == 0 && m1 > 0) || zero;
        if (!representative) continue;
        const double re = normal(rng);
        const double im = normal(rng);
        if (zero && !include_zero_mode) continue;
        const double kk = std::pow(k1u * m1, 2) + std::pow(k2u * m2, 2) + std::pow(k3u * m3, 2);
        const double amp = std::pow(1.0 + kk, -0.5 * spectrum_decay);
        const Complex v = zero ? Complex(amp * re, 0.0) : amp * Complex(re, im);
        const auto s = static_cast<Eigen::Index>(
            g.spectral_index(g.slot(Axis::x1, m1), g.slot(Axis::x2, m2), m3));
        c(s, 0) = v;
        if (m3 == 0 && !zero) {
          const auto sp = static_cast<Eigen::Index>(
              g.spectral_index(g.slot(Axis::x1, -m1), g.slot(Axis::x2, -m2), 0));
          c(sp, 0) = std::conj(v);
        }
      }
    }
  }
  return inverse(F);
}

Field random_bandlimited_vector(const GridPtr& grid, std::uint64_t seed, int kmax,
                                double spectrum_decay, bool include_zero_mode) {
  return stack(random_bandlimited(grid, 3 * seed, kmax, spectrum_decay, include_zero_mode),
               random_bandlimited(grid, 3 * seed + 1, kmax, spectrum_decay, include_zero_mode),
               random_bandlimited(grid, 3 * seed + 2, kmax, spectrum_decay, include_zero_mode));
}

IneqSample check_ineq1(const Field& f, const Field& g, const Field& h, std::array<Axis, 3> axes) {
  const SpectralField F = forward(f), G = forward(g), H = forward(h);
  const double nf = derivative_norm(F, {}), ng = derivative_norm(G, {}), nh = derivative_norm(H, {});
  return finish(f, g, h,
                {{nf, nf, 0.5},
                 {nf, derivative_norm(F, {axes[0]}), 0.5},
                 {ng, ng, 0.5},
                 {ng, derivative_norm(G, {axes[1]}), 0.5},
                 {nh, nh, 0.5},
                 {nh, derivative_norm(H, {axes[2]}), 0.5}},
                1, axes);
}

IneqSample check_ineq2(const Field& f, const Field& g, const Field& h, Axis i, Axis j, Axis k) {
  if (i == j || j == k || i == k) {
    throw UsageError("check_ineq2: axes i, j, k must be a permutation of 1, 2, 3");
  }
  const SpectralField F = forward(f), G = forward(g), H = forward(h);
  const double nf = derivative_norm(F, {}), ng = derivative_norm(G, {}), nh = derivative_norm(H, {});
  return finish(f, g, h,
                {{nf, nf, 0.25},
                 {nf, derivative_norm(F, {i}), 0.25},
                 {nf, derivative_norm(F, {j}), 0.25},
                 {nf, derivative_norm(F, {i, j}), 0.25},
                 {ng, ng, 0.5},
                 {ng, derivative_norm(G, {k}), 0.5},
                 {nh, nh, 1.0}},
                2, {i, j, k});
}

std::array<double, 4> check_cancellations(const State& s) {
  const Grid& g = s.grid();
  const double V = g.volume();
  const SpectralField A = truncate(forward(s.a));
  const SpectralField U = truncate(forward(s.u));
  const SpectralField B = truncate(forward(s.B));
  auto integral = [&](const Eigen::ArrayXd& x) { return V * x.mean(); };

  std::array<Eigen::ArrayXd, 3> u, b;
  std::array<std::array<Eigen::ArrayXd, 3>, 3> du, db;  // d[i][j] = d_j v_i
  for (int i = 0; i < 3; ++i) {
    u[i] = samples_of(g, U.component(i));
    b[i] = samples_of(g, B.component(i));
    for (int j = 0; j < 3; ++j) {
      const Eigen::ArrayXd& kj = g.k(static_cast<Axis>(j));
      du[i][j] = samples_of(g, I * kj * U.component(i));
      db[i][j] = samples_of(g, I * kj * B.component(i));
    }
  }
  const Eigen::ArrayXd divu = du[0][0] + du[1][1] + du[2][2];

  // (i) and (ii)
  double i1 = 0.0, i2 = 0.0, j1 = 0.0, j2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      i1 += integral(b[j] * db[i][j] * u[i]);
      i2 += integral(b[j] * du[i][j] * b[i]);
      j1 += integral(b[j] * db[j][i] * u[i]);
      j2 += integral(u[j] * db[i][j] * b[i]);
    }
  }
  const double j3 = integral((b[0].square() + b[1].square() + b[2].square()) * divu);

  // (iii) and (iv): grad^3 contracted over ordered index triples, i.e. multi-indices
  // |alpha| = 3 weighted by 3!/alpha!.
  const SpectralField divU = divergence(U);
  double t1 = 0.0, t2 = 0.0, q1 = 0.0, q2 = 0.0;
  for (const auto& alpha : multi_indices(3)) {
    const double w = factorial(3) / (factorial(alpha[0]) * factorial(alpha[1]) * factorial(alpha[2]));
    const Eigen::ArrayXcd D = multi_derivative(g, alpha);
    t1 += w * integral(samples_of(g, D * divU.component(0)) * samples_of(g, D * A.component(0)));
    for (int i = 0; i < 3; ++i) {
      const Eigen::ArrayXd& ki = g.k(static_cast<Axis>(i));
      t2 += w * integral(samples_of(g, D * I * ki * A.component(0)) *
                         samples_of(g, D * U.component(i)));
    }
    for (int i = 0; i < 3; ++i) {
      const Eigen::ArrayXcd Yhat = D * B.component(i);
      const Eigen::ArrayXcd Zhat = D * U.component(i);
      const Eigen::ArrayXd Y = samples_of(g, Yhat);
      const Eigen::ArrayXd Z = samples_of(g, Zhat);
      Eigen::ArrayXd b_grad_Y = Eigen::ArrayXd::Zero(Y.size());
      Eigen::ArrayXd b_grad_Z = Eigen::ArrayXd::Zero(Y.size());
      for (int j = 0; j < 3; ++j) {
        const Eigen::ArrayXd& kj = g.k(static_cast<Axis>(j));
        b_grad_Y += b[j] * samples_of(g, I * kj * Yhat);
        b_grad_Z += b[j] * samples_of(g, I * kj * Zhat);
      }
      q1 += w * integral(b_grad_Y * Z);
      q2 += w * integral(b_grad_Z * Y);
    }
  }

  return {normalised(i1 + i2, {i1, i2}), normalised(j1 + j2 + j3, {j1, j2, j3}),
          normalised(t1 + t2, {t1, t2}), normalised(q1 + q2, {q1, q2})};
}

std::vector<IneqSample> ineq_sweep(const IneqSweepConfig& cfg) {
  struct Task {
    int resolution;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (int n : cfg.resolutions) {
    for (int i = 0; i < cfg.seeds; ++i) tasks.push_back({n, cfg.first_seed + static_cast<std::uint64_t>(i)});
  }
  constexpr int per_task = 4;
  std::vector<IneqSample> out(tasks.size() * per_task);

  std::map<int, GridPtr> grids;
  for (int n : cfg.resolutions) grids[n] = Grid::make({n, n, n}, cfg.box);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const Task& task = tasks[t];
      const GridPtr& grid = grids.at(task.resolution);
      const Field f = random_bandlimited(grid, 3 * task.seed, cfg.kmax, cfg.spectrum_decay);
      const Field g = random_bandlimited(grid, 3 * task.seed + 1, cfg.kmax, cfg.spectrum_decay);
      const Field h = random_bandlimited(grid, 3 * task.seed + 2, cfg.kmax, cfg.spectrum_decay);
      std::array<IneqSample, per_task> r{
          check_ineq1(f, g, h),
          check_ineq2(f, g, h, Axis::x1, Axis::x2, Axis::x3),
          check_ineq2(f, g, h, Axis::x1, Axis::x3, Axis::x2),
          check_ineq2(f, g, h, Axis::x2, Axis::x3, Axis::x1),
      };
      for (int q = 0; q < per_task; ++q) {
        r[q].seed = task.seed;
        out[t * per_task + q] = r[q];
      }
    }
  };
  const int nthreads = std::max(1, cfg.threads);
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

std::vector<IneqSummary> summarize(const std::vector<IneqSample>& samples) {
  std::map<std::pair<int, int>, IneqSummary> acc;
  for (const IneqSample& s : samples) {
    IneqSummary& sum = acc[{s.resolution, s.lemma}];
    sum.resolution = s.resolution;
    sum.lemma = s.lemma;
    ++sum.samples;
    if (s.vacuous) {
      ++sum.vacuous;
      continue;
    }
    if (std::isfinite(s.ratio)) sum.c_emp = std::max(sum.c_emp, s.ratio);
  }
  std::vector<IneqSummary> out;
  for (auto& [key, sum] : acc) out.push_back(sum);
  return out;
}

void write_ineq_csv(std::ostream& out, const std::vector<IneqSample>& samples) {
  const auto old = out.precision(17);
  out << "seed,resolution,lemma,axes,lhs,rhs_no_c,ratio\n";
  for (const IneqSample& s : samples) {
    out << s.seed << ',' << s.resolution << ',' << s.lemma << ',' << index_of(s.axes[0]) + 1 << '-'
        << index_of(s.axes[1]) + 1 << '-' << index_of(s.axes[2]) + 1 << ',' << s.lhs << ','
        << s.rhs_no_c << ',' << s.ratio << '\n';
  }
  out << "\nresolution,lemma,samples,vacuous,c_emp\n";
  for (const IneqSummary& s : summarize(samples)) {
    out << s.resolution << ',' << s.lemma << ',' << s.samples << ',' << s.vacuous << ','
        << s.c_emp << '\n';
  }
  out.precision(old);
}

}  // namespace amhd
