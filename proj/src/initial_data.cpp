#include "acnsf/initial_data.hpp"

#include <cmath>

#include "acnsf/operators.hpp"
#include "acnsf/projectors.hpp"
#include "acnsf/random_fields.hpp"
#include "acnsf/reference.hpp"

namespace acnsf {

namespace {

template <typename F>
SpectralField sample_scalar(const GridSpec& g, F&& fn) {
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

}  // namespace

VectorField taylor_green_velocity(const GridSpec& grid) {
    const double c = two_pi / grid.length;  // unit modes on a non-2pi box
    VectorField u(grid);
    if (grid.dim == 2) {
        u[0] = sample_scalar(grid, [c](double x, double y, double) {
            return std::cos(c * x) * std::sin(c * y);
        });
        u[1] = sample_scalar(grid, [c](double x, double y, double) {
            return -std::sin(c * x) * std::cos(c * y);
        });
    } else {
        u[0] = sample_scalar(grid, [c](double x, double y, double z) {
            return std::cos(c * x) * std::sin(c * y) * std::cos(c * z);
        });
        u[1] = sample_scalar(grid, [c](double x, double y, double z) {
            return -std::sin(c * x) * std::cos(c * y) * std::cos(c * z);
        });
        // third component zero
    }
    return u;
}

SpectralField gaussian_blob(const GridSpec& grid, double width_fraction) {
    const double L = grid.length;
    const double w = width_fraction * L;
    const double cx = 0.30 * L, cy = 0.60 * L, cz = 0.45 * L;
    auto per_dist = [L](double x, double c) {
        return (L / std::numbers::pi) * std::sin(std::numbers::pi * (x - c) / L);
    };
    return sample_scalar(grid, [&](double x, double y, double z) {
        double d2 = per_dist(x, cx) * per_dist(x, cx) + per_dist(y, cy) * per_dist(y, cy);
        if (grid.dim == 3) d2 += per_dist(z, cz) * per_dist(z, cz);
        return std::exp(-d2 / (2.0 * w * w));
    });
}

VectorField heat_decay_velocity(const GridSpec& grid) {
    const double c = two_pi / grid.length;
    VectorField u(grid);
    u[0] = sample_scalar(grid, [c](double, double y, double) { return std::sin(c * y); });
    return u;
}

ACState make_initial_state(const GridSpec& grid, DataFamily family, std::uint64_t seed,
                           double eps, double mu, double kappa, P0Mode p0_mode) {
    ACState st;
    st.eps = eps;
    st.mu = mu;
    st.kappa = kappa;
    st.t = 0.0;
    st.u = VectorField(grid);
    st.theta = SpectralField(grid);
    st.p = SpectralField(grid);

    const int band = std::max(2, grid.n / 3 - 1);
    switch (family) {
        case DataFamily::TaylorGreen:
            st.u = taylor_green_velocity(grid);
            st.theta = gaussian_blob(grid);
            break;
        case DataFamily::Random:
        case DataFamily::Incompatible: {
            SpectrumFn spec = smooth_spectrum(grid);
            st.u = random_solenoidal_field(grid, seed, spec, band);
            st.theta = random_scalar_field_unit(grid, seed + 7919u, spec, band);
            if (family == DataFamily::Incompatible) {
                st.p = random_scalar_field_unit(grid, seed + 104729u, spec, band);
            }
            break;
        }
        case DataFamily::Acoustic: {
            const double c = two_pi / grid.length;
            st.p = sample_scalar(grid, [c](double x, double, double) { return std::sin(c * x); });
            break;
        }
        case DataFamily::HeatDecay:
            st.u = heat_decay_velocity(grid);
            break;
    }

    if (p0_mode == P0Mode::Zero) {
        st.p = SpectralField(grid);
    } else if (p0_mode == P0Mode::Compatible) {
        st.p = recover_pressure(st.u);
    }
    st.p.c[0] = cplx{0.0, 0.0};  // pressure is reported mean-zero
    return st;
}

}  // namespace acnsf
