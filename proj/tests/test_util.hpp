#pragma once

#include <cmath>
#include <vector>

#include "acnsf/operators.hpp"
#include "acnsf/random_fields.hpp"

namespace acnsf::testutil {

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double rel_diff(const SpectralField& a, const SpectralField& b) {
    double ref = std::max(norm_l2(a), norm_l2(b));
    if (ref == 0.0) return 0.0;
    return norm_l2(subtract(a, b)) / ref;
}

inline double rel_diff(const VectorField& a, const VectorField& b) {
    double ref = std::max(norm_l2(a), norm_l2(b));
    if (ref == 0.0) return 0.0;
    return norm_l2(subtract(a, b)) / ref;
}

/// Physical sample fn(x) on the grid, transformed.
template <typename F>
SpectralField sampled_field(const GridSpec& g, F&& fn) {
    std::vector<double> phys(g.total());
    const double h = g.spacing();
    const int n = g.n;
    if (g.dim == 2) {
        std::size_t flat = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j, ++flat) phys[flat] = fn(i * h, j * h, 0.0);
    } else {
        std::size_t flat = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k, ++flat) phys[flat] = fn(i * h, j * h, k * h);
    }
    return to_spectral(g, phys);
}

/// Direct coefficient-space convolution, restricted to inputs that are
/// band-limited to max_i |m_i| <= band; the independent oracle for
/// dealias_product.
inline SpectralField convolution_oracle(const SpectralField& a, const SpectralField& b,
                                        int band) {
    const GridSpec& g = a.grid;
    const int n = g.n;
    auto wrap = [&](int m) { return m >= 0 ? m : m + n; };
    auto flat_of = [&](int mi, int mj, int mk) -> std::size_t {
        if (g.dim == 2) return static_cast<std::size_t>(wrap(mi)) * n + wrap(mj);
        return (static_cast<std::size_t>(wrap(mi)) * n + wrap(mj)) * n + wrap(mk);
    };
    SpectralField out(g);
    const int kb = g.dim == 3 ? band : 0;
    // dealias_product zeroes the unpaired Nyquist slots, so the oracle
    // keeps only modes with every component below n/2 in magnitude
    for (int i1 = -band; i1 <= band; ++i1)
        for (int j1 = -band; j1 <= band; ++j1)
            for (int k1 = -kb; k1 <= kb; ++k1) {
                cplx av = a.c[flat_of(i1, j1, k1)];
                if (av == cplx{0.0, 0.0}) continue;
                for (int i2 = -band; i2 <= band; ++i2)
                    for (int j2 = -band; j2 <= band; ++j2)
                        for (int k2 = -kb; k2 <= kb; ++k2) {
                            int mi = i1 + i2, mj = j1 + j2, mk = k1 + k2;
                            if (std::abs(mi) >= n / 2 || std::abs(mj) >= n / 2 ||
                                std::abs(mk) >= n / 2)
                                continue;
                            out.c[flat_of(mi, mj, mk)] += av * b.c[flat_of(i2, j2, k2)];
                        }
            }
    return out;
}

}  // namespace acnsf::testutil
