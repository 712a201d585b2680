#pragma once

#include <complex>
#include <span>
#include <vector>

#include "acnsf/grid.hpp"

namespace acnsf {

using cplx = std::complex<double>;

/// Real scalar field on a periodic box, stored as complex Fourier
/// coefficients (Hermitian-symmetric).  coeff(0) is the spatial mean.
/// Storage is row-major over the axes; index i on an axis carries the
/// integer mode i <= n/2 ? i : i-n.
struct SpectralField {
    GridSpec grid;
    std::vector<cplx> c;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g) : grid(g), c(g.total(), cplx{0.0, 0.0}) {}

    std::size_t size() const { return c.size(); }
    cplx& operator[](std::size_t i) { return c[i]; }
    const cplx& operator[](std::size_t i) const { return c[i]; }
};

/// d-tuple of scalar fields sharing one grid.
struct VectorField {
    std::vector<SpectralField> comp;

    VectorField() = default;
    explicit VectorField(const GridSpec& g) : comp(g.dim, SpectralField(g)) {}

    int dim() const { return static_cast<int>(comp.size()); }
    const GridSpec& grid() const { return comp.at(0).grid; }
    SpectralField& operator[](int i) { return comp[static_cast<std::size_t>(i)]; }
    const SpectralField& operator[](int i) const { return comp[static_cast<std::size_t>(i)]; }
};

/// Forward transform with coeff(0) = mean convention.  Throws on shape
/// mismatch.  The input is the physical sample array in the field's
/// row-major layout.
SpectralField to_spectral(const GridSpec& grid, std::span<const double> physical);

/// Inverse transform; returns the physical samples (real parts; the
/// imaginary residue of a Hermitian field is rounding noise).
std::vector<double> to_physical(const SpectralField& f);

/// Physical samples of the field on its pad_factor-refined grid
/// (exact band-limited interpolation).
std::vector<double> to_physical_padded(const SpectralField& f);

/// Forward transform from the padded grid truncated back to the field's
/// wavevector set; the unpaired Nyquist slots are zeroed so products of
/// band-limited fields stay band-limited.
SpectralField from_physical_padded(const GridSpec& grid, std::span<const double> padded);

/// Max |c(k) - conj(c(-k))| over all modes, relative to the coefficient
/// l2 norm; 0 for an exactly real field.
double hermitian_defect(const SpectralField& f);

/// Averages c(k) with conj(c(-k)) in place, making the field exactly real.
void hermitian_symmetrize(SpectralField& f);

namespace detail {
/// Raw c2c transforms on an arbitrary cubic size (used by the transforms
/// above and by the mollifier kernel sampling).  Plans are cached per
/// size with FFTW_ESTIMATE; all executions run on the engine's own
/// aligned buffers so results are bitwise reproducible run to run.
void fft_forward_normalized(int dim, int npts, const cplx* in, cplx* out);
void fft_backward(int dim, int npts, const cplx* in, cplx* out);
}  // namespace detail

}  // namespace acnsf
