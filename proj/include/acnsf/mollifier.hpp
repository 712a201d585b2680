#pragma once

#include <string>
#include <vector>

#include "acnsf/spectral_field.hpp"

namespace acnsf {

/// Friedrichs mollifier j_alpha(x) = alpha^{-d} j(x/alpha) built from the
/// standard C-infinity bump exp(-1/(1-|x|^2)) on |x| < 1, normalized to
/// unit mass by grid quadrature.
struct MollifierSpec {
    double alpha = 0.25;
};

/// Kernel transform on the grid: the real multiplier m(k) such that
/// (f * j_alpha)^hat(k) = m(k) f_hat(k); m(0) = 1 exactly.
/// Requires alpha >= 4 * grid spacing (resolved kernel) and
/// alpha <= length/4 (support inside the box); throws otherwise.
std::vector<double> mollifier_multiplier(const GridSpec& grid, const MollifierSpec& m);

/// Convolution f * j_alpha as a Fourier multiplier; exact for
/// band-limited f (it reproduces the direct grid-quadrature convolution).
SpectralField mollify(const SpectralField& f, const MollifierSpec& m);

struct RatioRow {
    double alpha = 0.0;
    double numerator = 0.0;  // left-hand side norm
    double bound = 0.0;      // alpha/eps power times the controlling norm
    double ratio = 0.0;      // numerator / bound
};

struct RatioTable {
    std::vector<RatioRow> rows;
    double max_ratio = 0.0;
    double numerator_slope = 0.0;  // log-log slope of numerator vs alpha
};

/// ||f - f*j_alpha||_{L^p} against C_p alpha^{1-sigma} ||grad f||_{L^2},
/// sigma = d(1/2 - 1/p).  Requires a mean-zero f and p in [2,6] (d=3)
/// or [2,inf) (d=2).
RatioTable check_friedrichs_y1(const SpectralField& f, const std::vector<double>& alphas,
                               double p);

/// ||f*j_alpha||_{L^p} against C alpha^{-s-d(1/q-1/p)} ||f||_{W^{-s,q}}.
/// Requires q <= p, s >= 0, alphas in (0,1).
RatioTable check_friedrichs_y2(const SpectralField& f, const std::vector<double>& alphas,
                               double s, double q, double p);

/// CSV rows "alpha,numerator,bound,ratio" (17 significant digits).
std::string ratio_table_csv(const RatioTable& t);

}  // namespace acnsf
