#pragma once

#include <functional>

#include "acnsf/spectral_field.hpp"

namespace acnsf {

// Exact Fourier-multiplier calculus.  Every operator is built from the
// derivative wavenumbers (Nyquist component zeroed, keeping real fields
// real), so gradients, divergences, laplacians and their inverses
// satisfy their composition identities exactly on band-limited fields.

VectorField gradient(const SpectralField& f);
SpectralField divergence(const VectorField& v);
SpectralField laplacian(const SpectralField& f);

/// Multiplier -1/|k|^2 with the zero mode mapped to zero.  Throws
/// "inverse Laplacian undefined on means" when |coeff(0)| exceeds
/// 1e-12 of the coefficient norm.
SpectralField inverse_laplacian(const SpectralField& f);

SpectralField partial_derivative(const SpectralField& f, int axis);

/// Applies a real radial multiplier m(|k|^2); zero mode gets m(0).
SpectralField apply_isotropic_multiplier(const SpectralField& f,
                                         const std::function<double(double)>& m);

/// Pointwise product evaluated on the pad_factor-refined grid and
/// truncated back; alias-free for quadratic products at pad >= 3/2.
/// Throws on grid mismatch.
SpectralField dealias_product(const SpectralField& a, const SpectralField& b);

// ---- quadrature / inner products -----------------------------------------

/// integral f*g dx via the discrete Parseval identity (exact for grid data).
double inner_l2(const SpectralField& f, const SpectralField& g);
double inner_l2(const VectorField& f, const VectorField& g);

double norm_l2(const SpectralField& f);
double norm_l2(const VectorField& f);

/// integral |grad f|^2 dx, spectrally.
double grad_norm_sq(const SpectralField& f);
double grad_norm_sq(const VectorField& f);

/// Grid-quadrature L^r norm of physical samples; r = infinity gives the max.
double lp_norm_physical(std::span<const double> phys, double r, double cell_volume);

// ---- small field algebra ---------------------------------------------------

void axpy(SpectralField& y, double a, const SpectralField& x);   // y += a*x
void axpy(VectorField& y, double a, const VectorField& x);
void scale(SpectralField& f, double a);
void scale(VectorField& f, double a);
SpectralField subtract(const SpectralField& a, const SpectralField& b);
VectorField subtract(const VectorField& a, const VectorField& b);

double max_abs_physical(const VectorField& u);  // max over grid of |u| (euclidean)

}  // namespace acnsf
