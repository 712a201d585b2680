#include "acnsf/spectral_field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace acnsf {

namespace detail {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* buf = nullptr;
    std::size_t total = 0;
};

// Keyed by (dim, n).  FFTW planning is not thread-safe and each entry
// owns the execution buffer, so the engine serializes behind one lock;
// callers see pure, concurrently-safe transforms.
std::mutex& engine_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::pair<int, int>, PlanPair>& plan_cache() {
    static std::map<std::pair<int, int>, PlanPair> cache;
    return cache;
}

PlanPair& get_plans(int dim, int npts) {
    auto key = std::make_pair(dim, npts);
    auto& cache = plan_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    PlanPair p;
    p.total = 1;
    for (int a = 0; a < dim; ++a) p.total *= static_cast<std::size_t>(npts);
    p.buf = fftw_alloc_complex(p.total);
    if (!p.buf) throw std::runtime_error("spectral_core: fftw allocation failed");
    if (dim == 1) {
        p.fwd = fftw_plan_dft_1d(npts, p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
        p.bwd = fftw_plan_dft_1d(npts, p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    } else if (dim == 2) {
        p.fwd = fftw_plan_dft_2d(npts, npts, p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
        p.bwd = fftw_plan_dft_2d(npts, npts, p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
        p.fwd = fftw_plan_dft_3d(npts, npts, npts, p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
        p.bwd = fftw_plan_dft_3d(npts, npts, npts, p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!p.fwd || !p.bwd) throw std::runtime_error("spectral_core: fftw planning failed");
    return cache.emplace(key, p).first->second;
}

}  // namespace

void fft_forward_normalized(int dim, int npts, const cplx* in, cplx* out) {
    std::lock_guard<std::mutex> lock(engine_mutex());
    PlanPair& p = get_plans(dim, npts);
    std::memcpy(static_cast<void*>(p.buf), static_cast<const void*>(in),
                p.total * sizeof(cplx));
    fftw_execute(p.fwd);
    const double scale = 1.0 / static_cast<double>(p.total);
    const cplx* b = reinterpret_cast<const cplx*>(p.buf);
    for (std::size_t i = 0; i < p.total; ++i) out[i] = b[i] * scale;
}

void fft_backward(int dim, int npts, const cplx* in, cplx* out) {
    std::lock_guard<std::mutex> lock(engine_mutex());
    PlanPair& p = get_plans(dim, npts);
    std::memcpy(static_cast<void*>(p.buf), static_cast<const void*>(in),
                p.total * sizeof(cplx));
    fftw_execute(p.bwd);
    std::memcpy(static_cast<void*>(out), static_cast<const void*>(p.buf),
                p.total * sizeof(cplx));
}

}  // namespace detail

SpectralField to_spectral(const GridSpec& grid, std::span<const double> physical) {
    if (physical.size() != grid.total())
        throw std::invalid_argument("spectral_core.to_spectral: physical array shape mismatch");
    std::vector<cplx> tmp(grid.total());
    for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = cplx{physical[i], 0.0};
    SpectralField f(grid);
    detail::fft_forward_normalized(grid.dim, grid.n, tmp.data(), f.c.data());
    return f;
}

std::vector<double> to_physical(const SpectralField& f) {
    std::vector<cplx> tmp(f.size());
    detail::fft_backward(f.grid.dim, f.grid.n, f.c.data(), tmp.data());
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = tmp[i].real();
    return out;
}

namespace {

// Index maps between the n-point axis and the padded m-point axis.
// On truncation the unpaired Nyquist slot n/2 is zeroed (gather from
// nothing): dealiased products stay inside the band where the derivative
// calculus is exact, so band-limited states never develop Nyquist
// content.
struct AxisMap {
    std::vector<int> embed;                    // small index -> big index
    std::vector<std::pair<int, int>> gather;   // small index -> (big, big-or-minus-one)
};

AxisMap make_axis_map(int n, int m) {
    AxisMap a;
    a.embed.resize(static_cast<std::size_t>(n));
    a.gather.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        int mode = GridSpec::mode_of_index(i, n);
        int big = mode >= 0 ? mode : mode + m;
        a.embed[static_cast<std::size_t>(i)] = big;
        if (i == n / 2 && m > n) {
            a.gather[static_cast<std::size_t>(i)] = {-1, -1};
        } else {
            a.gather[static_cast<std::size_t>(i)] = {big, -1};
        }
    }
    return a;
}

}  // namespace

std::vector<double> to_physical_padded(const SpectralField& f) {
    const GridSpec& g = f.grid;
    const int m = g.padded_n();
    std::size_t big_total = 1;
    for (int a = 0; a < g.dim; ++a) big_total *= static_cast<std::size_t>(m);
    std::vector<cplx> big(big_total, cplx{0.0, 0.0});
    AxisMap am = make_axis_map(g.n, m);

    const int n = g.n;
    if (g.dim == 2) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                big[static_cast<std::size_t>(am.embed[i]) * m + am.embed[j]] =
                    f.c[static_cast<std::size_t>(i) * n + j];
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    big[(static_cast<std::size_t>(am.embed[i]) * m + am.embed[j]) * m + am.embed[k]] =
                        f.c[(static_cast<std::size_t>(i) * n + j) * n + k];
    }
    std::vector<cplx> phys(big_total);
    detail::fft_backward(g.dim, m, big.data(), phys.data());
    std::vector<double> out(big_total);
    for (std::size_t i = 0; i < big_total; ++i) out[i] = phys[i].real();
    return out;
}

SpectralField from_physical_padded(const GridSpec& grid, std::span<const double> padded) {
    const int m = grid.padded_n();
    std::size_t big_total = 1;
    for (int a = 0; a < grid.dim; ++a) big_total *= static_cast<std::size_t>(m);
    if (padded.size() != big_total)
        throw std::invalid_argument("spectral_core.from_physical_padded: padded shape mismatch");
    std::vector<cplx> tmp(big_total);
    for (std::size_t i = 0; i < big_total; ++i) tmp[i] = cplx{padded[i], 0.0};
    std::vector<cplx> big(big_total);
    detail::fft_forward_normalized(grid.dim, m, tmp.data(), big.data());

    AxisMap am = make_axis_map(grid.n, m);
    SpectralField out(grid);
    const int n = grid.n;
    auto gather1 = [&](int i) { return am.gather[static_cast<std::size_t>(i)]; };
    if (grid.dim == 2) {
        for (int i = 0; i < n; ++i) {
            auto [i1, i2] = gather1(i);
            for (int j = 0; j < n; ++j) {
                auto [j1, j2] = gather1(j);
                cplx v{0.0, 0.0};
                for (int a : {i1, i2}) {
                    if (a < 0) continue;
                    for (int b : {j1, j2}) {
                        if (b < 0) continue;
                        v += big[static_cast<std::size_t>(a) * m + b];
                    }
                }
                out.c[static_cast<std::size_t>(i) * n + j] = v;
            }
        }
    } else {
        for (int i = 0; i < n; ++i) {
            auto [i1, i2] = gather1(i);
            for (int j = 0; j < n; ++j) {
                auto [j1, j2] = gather1(j);
                for (int k = 0; k < n; ++k) {
                    auto [k1, k2] = gather1(k);
                    cplx v{0.0, 0.0};
                    for (int a : {i1, i2}) {
                        if (a < 0) continue;
                        for (int b : {j1, j2}) {
                            if (b < 0) continue;
                            for (int cc : {k1, k2}) {
                                if (cc < 0) continue;
                                v += big[(static_cast<std::size_t>(a) * m + b) * m + cc];
                            }
                        }
                    }
                    out.c[(static_cast<std::size_t>(i) * n + j) * n + k] = v;
                }
            }
        }
    }
    return out;
}

namespace {

std::size_t negated_index(const GridSpec& g, std::size_t flat) {
    const int n = g.n;
    std::size_t out = 0;
    std::size_t rem = flat;
    // decompose row-major, negate each axis index mod n, recompose
    std::size_t stride = 1;
    for (int a = 0; a < g.dim; ++a) stride *= static_cast<std::size_t>(n);
    for (int a = 0; a < g.dim; ++a) {
        stride /= static_cast<std::size_t>(n);
        int idx = static_cast<int>(rem / stride);
        rem %= stride;
        int neg = idx == 0 ? 0 : n - idx;
        out = out * static_cast<std::size_t>(n) + static_cast<std::size_t>(neg);
    }
    return out;
}

}  // namespace

double hermitian_defect(const SpectralField& f) {
    double norm2 = 0.0;
    for (const cplx& v : f.c) norm2 += std::norm(v);
    const double scale = std::sqrt(norm2);
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::size_t j = negated_index(f.grid, i);
        worst = std::max(worst, std::abs(f.c[i] - std::conj(f.c[j])));
    }
    return worst / scale;
}

void hermitian_symmetrize(SpectralField& f) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::size_t j = negated_index(f.grid, i);
        if (j < i) continue;
        cplx avg = 0.5 * (f.c[i] + std::conj(f.c[j]));
        f.c[i] = avg;
        f.c[j] = std::conj(avg);
    }
}

}  // namespace acnsf
