#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>

#include <Eigen/Core>

namespace amhd {

using Complex = std::complex<double>;

enum class Axis { x1 = 0, x2 = 1, x3 = 2 };

inline constexpr int index_of(Axis a) { return static_cast<int>(a); }

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

// Periodic box [0,l1) x [0,l2) x [0,l3) sampled on n1 x n2 x n3 points.
//
// Physical samples are stored x3-fastest: index (i1*n2 + i2)*n3 + i3.
// Spectral data keeps the non-redundant half spectrum of a real field,
// n1 x n2 x (n3/2+1), same ordering. Coefficients follow the Fourier-series
// convention f(x) = sum_k fhat_k exp(i k.x).
class Grid {
 public:
  static constexpr double two_pi = 2.0 * std::numbers::pi;

  static GridPtr make(std::array<int, 3> n,
                      std::array<double, 3> l = {two_pi, two_pi, two_pi});
  static GridPtr cube(int n, double l = two_pi) { return make({n, n, n}, {l, l, l}); }

  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int n(Axis a) const { return n_[index_of(a)]; }
  const std::array<int, 3>& dims() const { return n_; }
  double length(Axis a) const { return l_[index_of(a)]; }
  const std::array<double, 3>& lengths() const { return l_; }
  double spacing(Axis a) const { return l_[index_of(a)] / n_[index_of(a)]; }
  double volume() const { return l_[0] * l_[1] * l_[2]; }

  std::size_t size() const { return size_; }
  std::size_t spectral_size() const { return spectral_size_; }
  int half_n3() const { return n_[2] / 2 + 1; }

  /// Wavenumbers of one axis in FFT order: 0, 1, ..., n/2, -n/2+1, ..., -1 (times 2pi/l).
  const Eigen::ArrayXd& axis_wavenumbers(Axis a) const { return axis_k_[index_of(a)]; }
  /// Largest retained integer mode per axis under the dealias mask.
  int kmax(Axis a) const { return kmax_[index_of(a)]; }

  // Per spectral index tables.
  /// Wavevector component used for odd derivatives (Nyquist entries zeroed).
  const Eigen::ArrayXd& k(Axis a) const { return k_[index_of(a)]; }
  /// Integer mode number along an axis (Nyquist reported as +n/2).
  const Eigen::ArrayXi& mode(Axis a) const { return mode_[index_of(a)]; }
  /// |k|^2 with the full (Nyquist-including) wavenumbers.
  const Eigen::ArrayXd& k2() const { return k2_; }
  /// k1^2 + k2^2.
  const Eigen::ArrayXd& kh2() const { return kh2_; }
  /// 1 where the mode survives 2/3-rule truncation, else 0.
  const Eigen::ArrayXd& mask() const { return mask_; }
  /// Multiplicity of a half-spectrum entry in the full spectrum (1 or 2).
  const Eigen::ArrayXd& weight() const { return weight_; }

  std::size_t spectral_index(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * n_[1] + i2) * half_n3() + i3;
  }
  std::size_t point_index(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * n_[1] + i2) * n_[2] + i3;
  }
  /// FFT-order slot of a signed integer mode along an axis, or -1 if not representable.
  int slot(Axis a, int m) const;

  /// Coordinates of grid point i along axis a.
  double coord(Axis a, int i) const { return spacing(a) * i; }

  bool same_shape(const Grid& other) const { return n_ == other.n_ && l_ == other.l_; }

  // Raw transforms. forward divides by n1*n2*n3; inverse is unnormalised.
  void forward(const double* in, Complex* out) const;
  void inverse(const Complex* in, double* out) const;
  /// Inverse of the derivative i k_a F without materialising it.
  void inverse_derivative(const Complex* in, Axis a, double* out) const;

 private:
  void execute_inverse(Complex* scratch, double* out) const;

  Grid(std::array<int, 3> n, std::array<double, 3> l);

  std::array<int, 3> n_;
  std::array<double, 3> l_;
  std::size_t size_ = 0;
  std::size_t spectral_size_ = 0;
  std::array<int, 3> kmax_{};
  std::array<Eigen::ArrayXd, 3> axis_k_;
  std::array<Eigen::ArrayXd, 3> k_;
  std::array<Eigen::ArrayXi, 3> mode_;
  Eigen::ArrayXd k2_, kh2_, mask_, weight_;

  struct Plans;
  std::unique_ptr<Plans> plans_;
};

}  // namespace amhd
