#pragma once

#include <array>
#include <cstddef>
#include <numbers>

namespace acnsf {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Descriptor of a periodic cubic box with a uniform collocation grid.
///
/// Wavevectors per axis run over the integer modes {-n/2+1, ..., n/2}
/// scaled by 2*pi/length.  Odd-order derivative multipliers treat the
/// unpaired Nyquist mode n/2 as zero so that real fields stay real.
struct GridSpec {
    int dim = 3;               // 2 or 3
    int n = 0;                 // points per axis, even, >= 8
    double length = two_pi;    // box side
    double pad_factor = 1.5;   // 3/2 (quadratic-exact) or 2 (cubic-exact)

    std::size_t total() const {
        std::size_t t = 1;
        for (int a = 0; a < dim; ++a) t *= static_cast<std::size_t>(n);
        return t;
    }
    double volume() const {
        double v = 1.0;
        for (int a = 0; a < dim; ++a) v *= length;
        return v;
    }
    double spacing() const { return length / n; }

    /// Side of the product-dealiasing grid (even, >= pad_factor*n).
    int padded_n() const {
        int m = static_cast<int>(pad_factor * n + 0.5);
        if (m % 2 != 0) ++m;
        return m;
    }

    /// Signed integer mode for a storage index on an n-point axis.
    static int mode_of_index(int idx, int npts) {
        return idx <= npts / 2 ? idx : idx - npts;
    }

    double dk() const { return two_pi / length; }

    /// Derivative wavenumber for a storage index: Nyquist component -> 0.
    double k_derivative(int idx) const {
        if (idx == n / 2) return 0.0;
        return dk() * mode_of_index(idx, n);
    }

    /// Full wavenumber including the Nyquist mode (for even multipliers).
    double k_full(int idx) const { return dk() * mode_of_index(idx, n); }

    bool same_as(const GridSpec& o) const {
        return dim == o.dim && n == o.n && length == o.length &&
               pad_factor == o.pad_factor;
    }
};

/// Validates and returns a GridSpec.  Throws std::invalid_argument on
/// odd n, n < 8, dim outside {2,3}, non-positive length or a pad factor
/// outside {3/2, 2}.
GridSpec make_grid(int dim, int n, double length = two_pi, double pad_factor = 1.5);

}  // namespace acnsf
