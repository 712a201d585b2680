#include "acnsf/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace acnsf {

namespace {

// Iterates the flat coefficient array, handing the per-axis storage
// indices to the callback.  Row-major, axis 0 slowest.
template <typename F>
void for_each_mode(const GridSpec& g, F&& fn) {
    const int n = g.n;
    if (g.dim == 2) {
        std::size_t flat = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j, ++flat) fn(flat, i, j, 0);
    } else {
        std::size_t flat = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k, ++flat) fn(flat, i, j, k);
    }
}

}  // namespace

VectorField gradient(const SpectralField& f) {
    const GridSpec& g = f.grid;
    VectorField out(g);
    for_each_mode(g, [&](std::size_t flat, int i, int j, int k) {
        const double kd[3] = {g.k_derivative(i), g.k_derivative(j),
                              g.dim == 3 ? g.k_derivative(k) : 0.0};
        const cplx v = f.c[flat];
        for (int a = 0; a < g.dim; ++a) out[a].c[flat] = cplx{0.0, kd[a]} * v;
    });
    return out;
}

SpectralField partial_derivative(const SpectralField& f, int axis) {
    const GridSpec& g = f.grid;
    SpectralField out(g);
    for_each_mode(g, [&](std::size_t flat, int i, int j, int k) {
        const int idx[3] = {i, j, k};
        out.c[flat] = cplx{0.0, g.k_derivative(idx[axis])} * f.c[flat];
    });
    return out;
}

SpectralField divergence(const VectorField& v) {
    const GridSpec& g = v.grid();
    SpectralField out(g);
    for_each_mode(g, [&](std::size_t flat, int i, int j, int k) {
        const double kd[3] = {g.k_derivative(i), g.k_derivative(j),
                              g.dim == 3 ? g.k_derivative(k) : 0.0};
        cplx s{0.0, 0.0};
        for (int a = 0; a < g.dim; ++a) s += cplx{0.0, kd[a]} * v[a].c[flat];
        out.c[flat] = s;
    });
    return out;
}

SpectralField apply_isotropic_multiplier(const SpectralField& f,
                                         const std::function<double(double)>& m) {
    const GridSpec& g = f.grid;
    SpectralField out(g);
    for_each_mode(g, [&](std::size_t flat, int i, int j, int k) {
        const double kd[3] = {g.k_derivative(i), g.k_derivative(j),
                              g.dim == 3 ? g.k_derivative(k) : 0.0};
        double ksq = 0.0;
        for (int a = 0; a < g.dim; ++a) ksq += kd[a] * kd[a];
        out.c[flat] = m(ksq) * f.c[flat];
    });
    return out;
}

SpectralField laplacian(const SpectralField& f) {
    return apply_isotropic_multiplier(f, [](double ksq) { return -ksq; });
}

SpectralField inverse_laplacian(const SpectralField& f) {
    const double scale = norm_l2(f) / std::sqrt(f.grid.volume());
    if (std::abs(f.c[0]) > 1e-12 * std::max(scale, 1e-300))
        throw std::invalid_argument(
            "spectral_core.inverse_laplacian: inverse Laplacian undefined on means");
    SpectralField out = apply_isotropic_multiplier(
        f, [](double ksq) { return ksq > 0.0 ? -1.0 / ksq : 0.0; });
    out.c[0] = cplx{0.0, 0.0};
    return out;
}

SpectralField dealias_product(const SpectralField& a, const SpectralField& b) {
    if (!a.grid.same_as(b.grid))
        throw std::invalid_argument("spectral_core.dealias_product: grid mismatch");
    std::vector<double> pa = to_physical_padded(a);
    std::vector<double> pb = to_physical_padded(b);
    for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
    return from_physical_padded(a.grid, pa);
}

double inner_l2(const SpectralField& f, const SpectralField& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        s += f.c[i].real() * g.c[i].real() + f.c[i].imag() * g.c[i].imag();
    return s * f.grid.volume();
}

double inner_l2(const VectorField& f, const VectorField& g) {
    double s = 0.0;
    for (int a = 0; a < f.dim(); ++a) s += inner_l2(f[a], g[a]);
    return s;
}

double norm_l2(const SpectralField& f) {
    double s = 0.0;
    for (const cplx& v : f.c) s += std::norm(v);
    return std::sqrt(s * f.grid.volume());
}

double norm_l2(const VectorField& f) {
    double s = 0.0;
    for (int a = 0; a < f.dim(); ++a) {
        for (const cplx& v : f[a].c) s += std::norm(v);
    }
    return std::sqrt(s * f.grid().volume());
}

double grad_norm_sq(const SpectralField& f) {
    const GridSpec& g = f.grid;
    double s = 0.0;
    for_each_mode(g, [&](std::size_t flat, int i, int j, int k) {
        const double kd[3] = {g.k_derivative(i), g.k_derivative(j),
                              g.dim == 3 ? g.k_derivative(k) : 0.0};
        double ksq = 0.0;
        for (int a = 0; a < g.dim; ++a) ksq += kd[a] * kd[a];
        s += ksq * std::norm(f.c[flat]);
    });
    return s * g.volume();
}

double grad_norm_sq(const VectorField& f) {
    double s = 0.0;
    for (int a = 0; a < f.dim(); ++a) s += grad_norm_sq(f[a]);
    return s;
}

double lp_norm_physical(std::span<const double> phys, double r, double cell_volume) {
    if (std::isinf(r)) {
        double m = 0.0;
        for (double v : phys) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (double v : phys) s += std::pow(std::abs(v), r);
    return std::pow(s * cell_volume, 1.0 / r);
}

void axpy(SpectralField& y, double a, const SpectralField& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y.c[i] += a * x.c[i];
}

void axpy(VectorField& y, double a, const VectorField& x) {
    for (int c = 0; c < y.dim(); ++c) axpy(y[c], a, x[c]);
}

void scale(SpectralField& f, double a) {
    for (cplx& v : f.c) v *= a;
}

void scale(VectorField& f, double a) {
    for (int c = 0; c < f.dim(); ++c) scale(f[c], a);
}

SpectralField subtract(const SpectralField& a, const SpectralField& b) {
    SpectralField out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.c[i] -= b.c[i];
    return out;
}

VectorField subtract(const VectorField& a, const VectorField& b) {
    VectorField out = a;
    for (int c = 0; c < out.dim(); ++c) out[c] = subtract(a[c], b[c]);
    return out;
}

double max_abs_physical(const VectorField& u) {
    std::vector<std::vector<double>> phys;
    phys.reserve(static_cast<std::size_t>(u.dim()));
    for (int a = 0; a < u.dim(); ++a) phys.push_back(to_physical(u[a]));
    double m = 0.0;
    for (std::size_t i = 0; i < phys[0].size(); ++i) {
        double sq = 0.0;
        for (int a = 0; a < u.dim(); ++a) sq += phys[static_cast<std::size_t>(a)][i] *
                                                phys[static_cast<std::size_t>(a)][i];
        m = std::max(m, sq);
    }
    return std::sqrt(m);
}

}  // namespace acnsf
