#include "amhd/spectral.hpp"

#include <cmath>
#include <string>

#include "amhd/errors.hpp"

namespace amhd {

namespace {

const Complex I(0.0, 1.0);

}  // namespace

SpectralField forward(const Field& f) {
  const Grid& g = f.grid();
  SpectralField out(f.grid_ptr(), f.rank());
  for (int c = 0; c < f.num_components(); ++c) {
    g.forward(f.component(c).data(), out.component(c).data());
  }
  return out;
}

Field inverse(const SpectralField& F) {
  const Grid& g = F.grid();
  Field out(F.grid_ptr(), F.rank());
  for (int c = 0; c < F.num_components(); ++c) {
    g.inverse(F.component(c).data(), out.component(c).data());
  }
  return out;
}

SpectralField truncate(SpectralField F) {
  const auto& mask = F.grid().mask();
  for (int c = 0; c < F.num_components(); ++c) F.component(c) *= mask;
  return F;
}

Field truncate(const Field& f) { return inverse(truncate(forward(f))); }

Field resample(const Field& f, const GridPtr& target) {
  const Grid& src = f.grid();
  const Grid& dst = *target;
  if (src.lengths() != dst.lengths()) throw StructuralError("resample: box lengths differ");
  const SpectralField F = forward(f);
  SpectralField out(target, f.rank());
  // Only modes strictly below both Nyquist limits are carried over.
  std::array<int, 3> lim{};
  for (int a = 0; a < 3; ++a) {
    const Axis ax = static_cast<Axis>(a);
    lim[a] = std::min(src.n(ax), dst.n(ax)) / 2 - 1;
  }
  for (int m1 = -lim[0]; m1 <= lim[0]; ++m1) {
    for (int m2 = -lim[1]; m2 <= lim[1]; ++m2) {
      for (int m3 = 0; m3 <= lim[2]; ++m3) {
        const auto s_src = static_cast<Eigen::Index>(src.spectral_index(
            src.slot(Axis::x1, m1), src.slot(Axis::x2, m2), m3));
        const auto s_dst = static_cast<Eigen::Index>(dst.spectral_index(
            dst.slot(Axis::x1, m1), dst.slot(Axis::x2, m2), m3));
        for (int c = 0; c < f.num_components(); ++c) {
          out.coefficients()(s_dst, c) = F.coefficients()(s_src, c);
        }
      }
    }
  }
  return inverse(out);
}

SpectralField derivative(const SpectralField& F, Axis axis) {
  SpectralField out = F;
  const auto& k = F.grid().k(axis);
  for (int c = 0; c < F.num_components(); ++c) out.component(c) *= I * k;
  return out;
}

Field derivative(const Field& f, Axis axis) { return inverse(derivative(forward(f), axis)); }

SpectralField laplacian_h(const SpectralField& F) {
  SpectralField out = F;
  const auto& kh2 = F.grid().kh2();
  for (int c = 0; c < F.num_components(); ++c) out.component(c) *= -kh2;
  return out;
}

Field laplacian_h(const Field& f) { return inverse(laplacian_h(forward(f))); }

SpectralField laplacian(const SpectralField& F) {
  SpectralField out = F;
  const auto& k2 = F.grid().k2();
  for (int c = 0; c < F.num_components(); ++c) out.component(c) *= -k2;
  return out;
}

Field laplacian(const Field& f) { return inverse(laplacian(forward(f))); }

SpectralField gradient(const SpectralField& F) {
  require_rank(F.rank(), Rank::scalar, "gradient");
  SpectralField out(F.grid_ptr(), Rank::vector);
  for (int a = 0; a < 3; ++a) {
    out.component(a) = I * F.grid().k(static_cast<Axis>(a)) * F.component(0);
  }
  return out;
}

Field gradient(const Field& f) { return inverse(gradient(forward(f))); }

SpectralField divergence(const SpectralField& U) {
  require_rank(U.rank(), Rank::vector, "divergence");
  const Grid& g = U.grid();
  SpectralField out(U.grid_ptr(), Rank::scalar);
  out.component(0) = I * (g.k(Axis::x1) * U.component(0) + g.k(Axis::x2) * U.component(1) +
                          g.k(Axis::x3) * U.component(2));
  return out;
}

Field divergence(const Field& u) { return inverse(divergence(forward(u))); }

SpectralField curl(const SpectralField& U) {
  require_rank(U.rank(), Rank::vector, "curl");
  const Grid& g = U.grid();
  const auto& k1 = g.k(Axis::x1);
  const auto& k2 = g.k(Axis::x2);
  const auto& k3 = g.k(Axis::x3);
  SpectralField out(U.grid_ptr(), Rank::vector);
  out.component(0) = I * (k2 * U.component(2) - k3 * U.component(1));
  out.component(1) = I * (k3 * U.component(0) - k1 * U.component(2));
  out.component(2) = I * (k1 * U.component(1) - k2 * U.component(0));
  return out;
}

Field curl(const Field& u) { return inverse(curl(forward(u))); }

SpectralField project_divfree(const SpectralField& U) {
  require_rank(U.rank(), Rank::vector, "project_divfree");
  const Grid& g = U.grid();
  const auto& k1 = g.k(Axis::x1);
  const auto& k2 = g.k(Axis::x2);
  const auto& k3 = g.k(Axis::x3);
  SpectralField out = U;
  auto& d = out.coefficients();
  for (Eigen::Index s = 0; s < d.rows(); ++s) {
    // Projection uses the derivative wavevector so the discrete divergence vanishes.
    const double kk = k1[s] * k1[s] + k2[s] * k2[s] + k3[s] * k3[s];
    if (kk == 0.0) continue;
    const Complex kdotu = k1[s] * d(s, 0) + k2[s] * d(s, 1) + k3[s] * d(s, 2);
    const Complex r = kdotu / kk;
    d(s, 0) -= k1[s] * r;
    d(s, 1) -= k2[s] * r;
    d(s, 2) -= k3[s] * r;
  }
  return out;
}

Field project_divfree(const Field& u) { return inverse(project_divfree(forward(u))); }

Field dealiased_product(const Field& f, const Field& g) {
  require_same_grid(f.grid(), g.grid(), "dealiased_product");
  if (f.rank() == Rank::vector && g.rank() == Rank::vector) {
    throw StructuralError("dealiased_product: vector*vector is ambiguous; use components");
  }
  const Field ft = truncate(f);
  const Field gt = truncate(g);
  const Field& s = ft.rank() == Rank::scalar ? ft : gt;
  const Field& v = ft.rank() == Rank::scalar ? gt : ft;
  Field prod = v;
  for (int c = 0; c < prod.num_components(); ++c) prod.component(c) *= s.component(0);
  return truncate(prod);
}

double integrate(const Field& f) {
  require_rank(f.rank(), Rank::scalar, "integrate");
  return f.grid().volume() * f.component(0).mean();
}

double spectral_sum(const SpectralField& F, const SpectralField& G,
                    const Eigen::ArrayXd& multiplier) {
  require_same_grid(F.grid(), G.grid(), "spectral_sum");
  if (F.rank() != G.rank()) throw StructuralError("spectral_sum: rank mismatch");
  const Eigen::ArrayXd w = F.grid().weight() * multiplier;
  double acc = 0.0;
  for (int c = 0; c < F.num_components(); ++c) {
    acc += (w * (F.component(c) * G.component(c).conjugate()).real()).sum();
  }
  return F.grid().volume() * acc;
}

double inner(const SpectralField& F, const SpectralField& G) {
  // The k = 0 mode of a product of masked fields is alias-free, so the
  // dealiased quadrature reduces to a masked Parseval sum.
  return spectral_sum(F, G, F.grid().mask());
}

double inner(const Field& f, const Field& g) {
  require_same_grid(f.grid(), g.grid(), "inner");
  if (f.rank() != g.rank()) throw StructuralError("inner: rank mismatch");
  return inner(forward(f), forward(g));
}

Eigen::ArrayXd sobolev_weight(const Grid& g, double s) {
  if (s == 0.0) return Eigen::ArrayXd::Ones(static_cast<Eigen::Index>(g.spectral_size()));
  return (1.0 + g.k2()).pow(s);
}

double sobolev_norm(const SpectralField& F, double s) {
  if (!(s >= 0.0)) throw DomainError("sobolev_norm: order s must be nonnegative");
  return std::sqrt(std::max(0.0, spectral_sum(F, F, sobolev_weight(F.grid(), s))));
}

double sobolev_norm(const Field& f, double s) {
  if (!(s >= 0.0)) throw DomainError("sobolev_norm: order s must be nonnegative");
  return sobolev_norm(forward(f), s);
}

}  // namespace amhd
