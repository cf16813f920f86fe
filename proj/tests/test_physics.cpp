#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "amhd/errors.hpp"
#include "amhd/physics.hpp"
#include "amhd/spectral.hpp"
#include "oracles.hpp"

using namespace amhd;

TEST_CASE("parameter validation") {
  PhysParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.nu() == 2.0);
  p.mu = -1.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("mu > 0"), DomainError);
  p = PhysParams{};
  p.lambda = -3.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("nu = lambda + 2 mu > 0"), DomainError);
  p = PhysParams{};
  p.sigma = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = PhysParams{};
  p.gamma = 0.5;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("pressure law") {
  PhysParams p;
  CHECK(pressure(1.2, p) == doctest::Approx(0.72).epsilon(1e-15));
  CHECK(pressure_deriv(1.2, p) == doctest::Approx(1.2).epsilon(1e-15));
  for (double gamma : {1.0, 1.4, 2.0, 3.0}) {
    p.gamma = gamma;
    CHECK(pressure_deriv(1.0, p) == 1.0);
  }
  p.gamma = 1.4;
  const double want = std::pow(1.5, 0.4);
  CHECK(pressure_deriv(1.5, p) == doctest::Approx(want).epsilon(1e-15));
  CHECK(want == doctest::Approx(1.1761).epsilon(1e-4));
  // Central difference of P.
  const double h = 1e-5;
  const double fd = (pressure(1.5 + h, p) - pressure(1.5 - h, p)) / (2 * h);
  CHECK(std::abs(fd - want) < 1e-9);
  CHECK_THROWS_AS(pressure(0.0, p), DomainError);
  CHECK_THROWS_AS(pressure_deriv(-1.0, p), DomainError);
}

TEST_CASE("composition functions I and J") {
  PhysParams p;
  CHECK(I_of(0.0) == 0.0);
  CHECK(J_of(0.0, p) == 0.0);
  CHECK(I_of(1.0) == 0.5);
  for (double a : {-0.4, 0.3, 0.9}) CHECK(J_of(a, p) == 0.0);
  p.gamma = 1.4;
  for (double a : {-0.4, 0.3, 0.9}) {
    CHECK(J_of(a, p) == doctest::Approx(pressure_deriv(1 + a, p) / (1 + a) - 1).epsilon(1e-13));
  }
  CHECK(J_of(0.0, p) == 0.0);
  CHECK_THROWS_AS(I_of(-1.0), DomainError);
  CHECK_THROWS_AS(J_of(-1.5, p), DomainError);
}

TEST_CASE("composite-function bound |I(a)|_H3 <= C |a|_H3 with a grid-independent C") {
  // I(a) is not band-limited; compare the measured constant on two resolutions.
  double c_by_grid[2] = {0.0, 0.0};
  const int sizes[2] = {32, 48};
  for (int r = 0; r < 2; ++r) {
    const auto g = Grid::cube(sizes[r]);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      Field a = random_bandlimited(g, seed, 3, 2.0);
      a *= 0.3 / sobolev_norm(a, 3.0);
      Field ia = Field::scalar(g);
      ia.component(0) = a.component(0) / (1.0 + a.component(0));
      c_by_grid[r] = std::max(c_by_grid[r], sobolev_norm(ia, 3.0) / sobolev_norm(a, 3.0));
    }
  }
  MESSAGE("C(32^3) = " << c_by_grid[0] << ", C(48^3) = " << c_by_grid[1]);
  CHECK(c_by_grid[0] < 2.0);
  CHECK(std::abs(c_by_grid[0] - c_by_grid[1]) <= 1e-3 * c_by_grid[1]);
}
