#pragma once

#include <vector>

#include "acnsf/spectral_field.hpp"

namespace acnsf {

/// Mixed-norm descriptor for L^q_t W^{s,r}_x quantities.  s = 0 gives a
/// plain Lebesgue norm; homogeneous selects the |k|^s multiplier (zero
/// mode dropped) instead of the Bessel weight (1+|k|^2)^{s/2}.
struct NormSpec {
    double q = 2.0;
    double r = 2.0;
    double s = 0.0;
    bool homogeneous = false;

    static NormSpec lebesgue(double r);
    static NormSpec sobolev(double s, double r, bool homogeneous = false);
    static NormSpec space_time(double q, double r, double s = 0.0, bool homogeneous = false);
};

/// W^{s,r} norm: radial multiplier, then grid-quadrature L^r norm of the
/// physical field (r = 2 stays in coefficient space; L^inf is the grid
/// max).  Homogeneous negative-order norms require a mean-zero field.
double spatial_norm(const SpectralField& f, const NormSpec& spec);
double spatial_norm(const VectorField& f, const NormSpec& spec);

/// (integral of ||f(t)||^q dt)^(1/q) with composite trapezoid over the
/// uniformly spaced samples; q = inf takes the max over samples.  Throws
/// for fewer than 2 samples when q < inf.
double space_time_norm(const std::vector<SpectralField>& traj, double dt_sample,
                       const NormSpec& spec);

/// Same norm from precomputed per-sample spatial norms.
double space_time_norm_values(const std::vector<double>& spatial_norms, double dt_sample,
                              double q);

/// Wave-admissibility verdict for an exponent pair.
struct AdmissiblePair {
    double q = 0.0;
    double r = 0.0;
    double gamma = 0.0;  // from 1/q + d/r = d/2 - gamma
    int dim = 0;
    bool admissible = false;  // 2/q <= (d-1)(1/2 - 1/r)
};

/// Throws for q or r below 2 or dim < 2.
AdmissiblePair wave_admissible(double q, double r, int dim);

}  // namespace acnsf
