#pragma once

#include "acnsf/spectral_field.hpp"

namespace acnsf {

/// Leray-Hodge decomposition of a vector field: v = solenoidal + gradient
/// with div(solenoidal) = 0 and gradient = grad of a potential.
struct HodgePair {
    VectorField solenoidal;  // P v
    VectorField gradient;    // Q v
};

/// Q = grad laplacian^{-1} div: per mode k != 0 the rank-one projector
/// (k kT/|k|^2).  The zero mode (and pure-Nyquist junk modes, where the
/// derivative wavenumber vanishes) is assigned to P: constants are
/// divergence-free on the torus.
VectorField project_Q(const VectorField& v);

/// P = I - Q, computed in one pass.
VectorField project_P(const VectorField& v);

HodgePair hodge_decompose(const VectorField& v);

}  // namespace acnsf
