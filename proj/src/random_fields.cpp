#include "acnsf/random_fields.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "acnsf/operators.hpp"
#include "acnsf/projectors.hpp"

namespace acnsf {

namespace {

std::size_t flat_index(const GridSpec& g, int mi, int mj, int mk) {
    auto wrap = [&](int m) { return m >= 0 ? m : m + g.n; };
    if (g.dim == 2)
        return static_cast<std::size_t>(wrap(mi)) * g.n + wrap(mj);
    return (static_cast<std::size_t>(wrap(mi)) * g.n + wrap(mj)) * g.n + wrap(mk);
}

bool lexicographically_positive(int a, int b, int c) {
    if (a != 0) return a > 0;
    if (b != 0) return b > 0;
    return c > 0;
}

}  // namespace

SpectralField random_scalar_field(const GridSpec& grid, std::uint64_t seed,
                                  const SpectrumFn& spectrum, int band) {
    if (band < 1 || band > grid.n / 2 - 1)
        throw std::invalid_argument("random_scalar_field: band must be in [1, n/2-1]");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralField f(grid);
    const int kb = grid.dim == 3 ? band : 0;
    for (int i = -band; i <= band; ++i)
        for (int j = -band; j <= band; ++j)
            for (int k = -kb; k <= kb; ++k) {
                if (!lexicographically_positive(i, j, k)) continue;
                double ksq = static_cast<double>(i) * i + static_cast<double>(j) * j +
                             static_cast<double>(k) * k;
                double kmag = grid.dk() * std::sqrt(ksq);
                double amp = spectrum(kmag);
                cplx v{gauss(rng), gauss(rng)};
                v *= amp;
                f.c[flat_index(grid, i, j, k)] = v;
                f.c[flat_index(grid, -i, -j, -k)] = std::conj(v);
            }
    return f;
}

SpectralField random_scalar_field_unit(const GridSpec& grid, std::uint64_t seed,
                                       const SpectrumFn& spectrum, int band) {
    SpectralField f = random_scalar_field(grid, seed, spectrum, band);
    double nrm = norm_l2(f);
    if (nrm > 0.0) scale(f, 1.0 / nrm);
    return f;
}

VectorField random_solenoidal_field(const GridSpec& grid, std::uint64_t seed,
                                    const SpectrumFn& spectrum, int band) {
    VectorField v(grid);
    for (int a = 0; a < grid.dim; ++a)
        v[a] = random_scalar_field(grid, seed + 1000003u * static_cast<std::uint64_t>(a + 1),
                                   spectrum, band);
    VectorField sol = project_P(v);
    double nrm = norm_l2(sol);
    if (nrm > 0.0) scale(sol, 1.0 / nrm);
    return sol;
}

SpectrumFn smooth_spectrum(const GridSpec& grid, double k0_modes) {
    const double k0 = k0_modes * grid.dk();
    return [k0](double k) {
        if (k == 0.0) return 0.0;
        double r = k / k0;
        return r * std::exp(-0.5 * r * r);
    };
}

SpectrumFn power_law_spectrum(double expo) {
    return [expo](double k) { return k == 0.0 ? 0.0 : std::pow(k, -expo); };
}

}  // namespace acnsf
