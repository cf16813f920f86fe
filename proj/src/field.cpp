#include "amhd/field.hpp"

#include <cmath>
#include <string>

#include "amhd/errors.hpp"

namespace amhd {

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (&a != &b && !a.same_shape(b)) {
    throw StructuralError(std::string(where) + ": fields live on different grids");
  }
}

void require_rank(Rank have, Rank want, const char* where) {
  if (have != want) {
    throw StructuralError(std::string(where) + ": expected a " +
                          (want == Rank::scalar ? "scalar" : "vector") + " field");
  }
}

Field::Field(GridPtr grid, Rank rank)
    : grid_(std::move(grid)), rank_(rank),
      data_(Samples::Zero(static_cast<Eigen::Index>(grid_->size()), components(rank))) {}

Field::Field(GridPtr grid, Rank rank, Samples samples)
    : grid_(std::move(grid)), rank_(rank), data_(std::move(samples)) {
  if (data_.rows() != static_cast<Eigen::Index>(grid_->size()) ||
      data_.cols() != components(rank_)) {
    throw StructuralError("field: sample array is " + std::to_string(data_.rows()) + "x" +
                          std::to_string(data_.cols()) + ", grid needs " +
                          std::to_string(grid_->size()) + "x" +
                          std::to_string(components(rank_)));
  }
}

namespace {

void fill(const Grid& g, Eigen::Ref<Eigen::ArrayXd> out, const Field::Fn& f) {
  for (int i1 = 0; i1 < g.n(Axis::x1); ++i1) {
    const double x1 = g.coord(Axis::x1, i1);
    for (int i2 = 0; i2 < g.n(Axis::x2); ++i2) {
      const double x2 = g.coord(Axis::x2, i2);
      for (int i3 = 0; i3 < g.n(Axis::x3); ++i3) {
        out[g.point_index(i1, i2, i3)] = f(x1, x2, g.coord(Axis::x3, i3));
      }
    }
  }
}

}  // namespace

Field Field::from_function(GridPtr grid, const Fn& f) {
  Field out(std::move(grid), Rank::scalar);
  fill(out.grid(), out.component(0), f);
  return out;
}

Field Field::from_functions(GridPtr grid, const Fn& f1, const Fn& f2, const Fn& f3) {
  Field out(std::move(grid), Rank::vector);
  fill(out.grid(), out.component(0), f1);
  fill(out.grid(), out.component(1), f2);
  fill(out.grid(), out.component(2), f3);
  return out;
}

Field Field::extract(int c) const {
  Samples col = data_.col(c);
  return Field(grid_, Rank::scalar, std::move(col));
}

double Field::max_abs() const { return data_.size() ? data_.abs().maxCoeff() : 0.0; }

bool Field::all_finite() const { return data_.allFinite(); }

Field& Field::operator+=(const Field& o) {
  require_same_grid(grid(), o.grid(), "field +");
  require_rank(o.rank(), rank_, "field +");
  data_ += o.data_;
  return *this;
}

Field& Field::operator-=(const Field& o) {
  require_same_grid(grid(), o.grid(), "field -");
  require_rank(o.rank(), rank_, "field -");
  data_ -= o.data_;
  return *this;
}

SpectralField::SpectralField(GridPtr grid, Rank rank)
    : grid_(std::move(grid)), rank_(rank),
      data_(Coefficients::Zero(static_cast<Eigen::Index>(grid_->spectral_size()),
                               components(rank))) {}

SpectralField::SpectralField(GridPtr grid, Rank rank, Coefficients coefficients)
    : grid_(std::move(grid)), rank_(rank), data_(std::move(coefficients)) {
  if (data_.rows() != static_cast<Eigen::Index>(grid_->spectral_size()) ||
      data_.cols() != components(rank_)) {
    throw StructuralError("spectral field: coefficient array does not match grid");
  }
}

SpectralField SpectralField::extract(int c) const {
  Coefficients col = data_.col(c);
  return SpectralField(grid_, Rank::scalar, std::move(col));
}

Complex SpectralField::at(int c, int m1, int m2, int m3) const {
  const Grid& g = *grid_;
  const bool conj = m3 < 0;
  if (conj) {
    m1 = -m1;
    m2 = -m2;
    m3 = -m3;
  }
  const int s1 = g.slot(Axis::x1, m1), s2 = g.slot(Axis::x2, m2), s3 = g.slot(Axis::x3, m3);
  if (s1 < 0 || s2 < 0 || s3 < 0) throw UsageError("spectral field: mode not representable");
  const Complex v = data_(static_cast<Eigen::Index>(g.spectral_index(s1, s2, s3)), c);
  return conj ? std::conj(v) : v;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(grid(), o.grid(), "spectral +");
  require_rank(o.rank(), rank_, "spectral +");
  data_ += o.data_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(grid(), o.grid(), "spectral -");
  require_rank(o.rank(), rank_, "spectral -");
  data_ -= o.data_;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double c, Field a) { return a *= c; }
Field operator-(Field a) { return a *= -1.0; }
SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double c, SpectralField a) { return a *= c; }

Field stack(const Field& f1, const Field& f2, const Field& f3) {
  require_rank(f1.rank(), Rank::scalar, "stack");
  require_rank(f2.rank(), Rank::scalar, "stack");
  require_rank(f3.rank(), Rank::scalar, "stack");
  require_same_grid(f1.grid(), f2.grid(), "stack");
  require_same_grid(f1.grid(), f3.grid(), "stack");
  Field out(f1.grid_ptr(), Rank::vector);
  out.component(0) = f1.component(0);
  out.component(1) = f2.component(0);
  out.component(2) = f3.component(0);
  return out;
}

}  // namespace amhd
