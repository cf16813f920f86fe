#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "amhd/field.hpp"
#include "amhd/state.hpp"

namespace amhd {

/// Reproducible random trigonometric polynomial with modes |m_i| <= kmax and
/// Gaussian coefficients of scale (1+|k|^2)^(-decay/2). The coefficient sequence
/// depends only on (seed, kmax), so one seed gives the same function on any grid.
Field random_bandlimited(const GridPtr& grid, std::uint64_t seed, int kmax, double spectrum_decay,
                         bool include_zero_mode = false);
Field random_bandlimited_vector(const GridPtr& grid, std::uint64_t seed, int kmax,
                                double spectrum_decay, bool include_zero_mode = false);

/// One evaluation of an anisotropic trilinear bound: lhs = int |fgh|, rhs with C = 1.
struct IneqSample {
  double lhs = 0.0;
  double rhs_no_c = 0.0;
  double ratio = 0.0;  ///< lhs / rhs_no_c, 0 when both vanish
  int lemma = 1;
  std::array<Axis, 3> axes{Axis::x1, Axis::x2, Axis::x3};
  int resolution = 0;
  std::uint64_t seed = 0;
  /// A derivative factor vanished while lhs > 0: the bound is vacuous on torus zero-modes.
  bool vacuous = false;
  /// |lhs on the 2x grid - lhs on the native grid|, a quadrature error indicator.
  double quadrature_error = 0.0;
};

/// int|fgh| <= C |f|^1/2 |d1 f|^1/2 |g|^1/2 |d2 g|^1/2 |h|^1/2 |d3 h|^1/2.
/// `axes[i]` is the derivative direction of the i-th factor.
IneqSample check_ineq1(const Field& f, const Field& g, const Field& h,
                       std::array<Axis, 3> axes = {Axis::x1, Axis::x2, Axis::x3});

/// int|fgh| <= C (|f| |d_i f| |d_j f| |d_i d_j f|)^1/4 (|g| |d_k g|)^1/2 |h|, {i,j,k} = {1,2,3}.
IneqSample check_ineq2(const Field& f, const Field& g, const Field& h, Axis i, Axis j, Axis k);

/// Normalised residuals of the four integration-by-parts cancellations:
///  (i)   int (B.grad B).u + int (B.grad u).B
///  (ii)  int grad(|B|^2/2).u + int (u.grad B).B + int |B|^2 div u
///  (iii) int grad^3 div u : grad^3 a + int grad^3 grad a : grad^3 u
///  (iv)  int (B.grad grad^3 B) : grad^3 u + int (B.grad grad^3 u) : grad^3 B
/// each divided by its largest constituent integral (0 when all vanish).
std::array<double, 4> check_cancellations(const State& s);

struct IneqSweepConfig {
  std::vector<int> resolutions{16, 32};
  int seeds = 100;
  std::uint64_t first_seed = 1;
  int kmax = 4;
  double spectrum_decay = 1.0;
  int threads = 1;
  std::array<double, 3> box{Grid::two_pi, Grid::two_pi, Grid::two_pi};
};

/// Lemma 1 with axes (1,2,3) and lemma 2 with (i,j,k) in {(1,2,3), (1,3,2), (2,3,1)}
/// for every seed and resolution; results ordered by resolution, seed, lemma, axes.
std::vector<IneqSample> ineq_sweep(const IneqSweepConfig& cfg);

struct IneqSummary {
  int resolution = 0;
  int lemma = 0;
  std::size_t samples = 0;
  std::size_t vacuous = 0;
  double c_emp = 0.0;  ///< running max of ratio over the ensemble
};

std::vector<IneqSummary> summarize(const std::vector<IneqSample>& samples);

void write_ineq_csv(std::ostream& out, const std::vector<IneqSample>& samples);

}  // namespace amhd
