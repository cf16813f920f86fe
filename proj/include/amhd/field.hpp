#pragma once

#include <functional>

#include <Eigen/Core>

#include "amhd/grid.hpp"

namespace amhd {

enum class Rank { scalar = 1, vector = 3 };

inline constexpr int components(Rank r) { return static_cast<int>(r); }

/// Real samples of a scalar or 3-vector function on a grid; one column per component.
class Field {
 public:
  using Samples = Eigen::ArrayXXd;
  using Fn = std::function<double(double, double, double)>;

  Field(GridPtr grid, Rank rank);
  Field(GridPtr grid, Rank rank, Samples samples);

  static Field scalar(GridPtr grid) { return Field(std::move(grid), Rank::scalar); }
  static Field vector(GridPtr grid) { return Field(std::move(grid), Rank::vector); }
  static Field from_function(GridPtr grid, const Fn& f);
  static Field from_functions(GridPtr grid, const Fn& f1, const Fn& f2, const Fn& f3);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  Rank rank() const { return rank_; }
  int num_components() const { return components(rank_); }

  const Samples& samples() const { return data_; }
  Samples& samples() { return data_; }
  auto component(int c) const { return data_.col(c); }
  auto component(int c) { return data_.col(c); }
  /// Scalar field holding one component of this one.
  Field extract(int c) const;

  double max_abs() const;
  bool all_finite() const;

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double c) {
    data_ *= c;
    return *this;
  }

 private:
  GridPtr grid_;
  Rank rank_;
  Samples data_;
};

/// Half-spectrum Fourier coefficients of a real scalar or vector field.
class SpectralField {
 public:
  using Coefficients = Eigen::ArrayXXcd;

  SpectralField(GridPtr grid, Rank rank);
  SpectralField(GridPtr grid, Rank rank, Coefficients coefficients);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  Rank rank() const { return rank_; }
  int num_components() const { return components(rank_); }

  const Coefficients& coefficients() const { return data_; }
  Coefficients& coefficients() { return data_; }
  auto component(int c) const { return data_.col(c); }
  auto component(int c) { return data_.col(c); }
  SpectralField extract(int c) const;

  /// Coefficient of the signed integer mode (m1,m2,m3) of one component; conjugates for m3 < 0.
  Complex at(int c, int m1, int m2, int m3) const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double c) {
    data_ *= c;
    return *this;
  }

 private:
  GridPtr grid_;
  Rank rank_;
  Coefficients data_;
};

void require_same_grid(const Grid& a, const Grid& b, const char* where);
void require_rank(Rank have, Rank want, const char* where);

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double c, Field a);
Field operator-(Field a);
SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double c, SpectralField a);

/// Stack three scalar fields into a vector field.
Field stack(const Field& f1, const Field& f2, const Field& f3);

}  // namespace amhd
