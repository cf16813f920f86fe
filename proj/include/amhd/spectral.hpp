#pragma once

#include "amhd/field.hpp"

namespace amhd {

// Transforms ---------------------------------------------------------------

SpectralField forward(const Field& f);
Field inverse(const SpectralField& F);

/// Zero every mode outside the 2/3-rule mask.
SpectralField truncate(SpectralField F);
Field truncate(const Field& f);

/// Spectral interpolation onto another grid of the same box (zero-padding or truncation).
Field resample(const Field& f, const GridPtr& target);

// Differential operators (Fourier multipliers) ------------------------------

SpectralField derivative(const SpectralField& F, Axis axis);
Field derivative(const Field& f, Axis axis);

SpectralField laplacian_h(const SpectralField& F);
Field laplacian_h(const Field& f);
SpectralField laplacian(const SpectralField& F);
Field laplacian(const Field& f);

SpectralField gradient(const SpectralField& F);
Field gradient(const Field& f);
SpectralField divergence(const SpectralField& U);
Field divergence(const Field& u);
SpectralField curl(const SpectralField& U);
Field curl(const Field& u);

/// Leray projection: u_hat - k (k.u_hat)/|k|^2 per mode, k = 0 untouched.
SpectralField project_divfree(const SpectralField& U);
Field project_divfree(const Field& u);

// Products and quadrature ---------------------------------------------------

/// Pointwise product with inputs and output truncated to the dealias mask.
/// scalar*scalar -> scalar, scalar*vector -> vector (componentwise).
Field dealiased_product(const Field& f, const Field& g);

/// V * mean(samples) for a scalar field.
double integrate(const Field& f);
/// Integral of the dealiased product, summed over components.
double inner(const Field& f, const Field& g);
double inner(const SpectralField& F, const SpectralField& G);

/// V * sum_k m(k) Re(F_k conj(G_k)) over the full spectrum and all components.
double spectral_sum(const SpectralField& F, const SpectralField& G,
                    const Eigen::ArrayXd& multiplier);

/// (V sum_k (1+|k|^2)^s |F_k|^2)^{1/2}, summed over components.
double sobolev_norm(const SpectralField& F, double s);
double sobolev_norm(const Field& f, double s);
inline double l2_norm(const Field& f) { return sobolev_norm(f, 0.0); }

/// The multiplier (1+|k|^2)^s tabulated on the half spectrum.
Eigen::ArrayXd sobolev_weight(const Grid& g, double s);

}  // namespace amhd
