#pragma once

#include <cstdint>
#include <functional>

#include "acnsf/spectral_field.hpp"

namespace acnsf {

/// Amplitude profile |f_hat(k)| as a function of the physical |k|.
using SpectrumFn = std::function<double(double)>;

/// Mean-zero real random field synthesized in spectral space with the
/// given amplitude profile and Gaussian phases.  Modes are confined to
/// max_i |m_i| <= band (band <= n/2 - 1); deterministic for a fixed seed.
SpectralField random_scalar_field(const GridSpec& grid, std::uint64_t seed,
                                  const SpectrumFn& spectrum, int band);

/// Same, normalized to unit L2 norm.
SpectralField random_scalar_field_unit(const GridSpec& grid, std::uint64_t seed,
                                       const SpectrumFn& spectrum, int band);

/// Divergence-free random vector field (componentwise synthesis followed
/// by the Leray projection), normalized to unit L2 norm.
VectorField random_solenoidal_field(const GridSpec& grid, std::uint64_t seed,
                                    const SpectrumFn& spectrum, int band);

/// Smooth low-mode profile peaked near |m| = k0 modes (Gaussian tail).
SpectrumFn smooth_spectrum(const GridSpec& grid, double k0_modes = 3.0);

/// Power-law profile |k|^(-expo); used for synthesizing fields that are
/// exactly as rough as a Sobolev class allows.
SpectrumFn power_law_spectrum(double expo);

}  // namespace acnsf
