#include "acnsf/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "acnsf/operators.hpp"

namespace acnsf {

NormSpec NormSpec::lebesgue(double r) { return NormSpec{2.0, r, 0.0, false}; }

NormSpec NormSpec::sobolev(double s, double r, bool homogeneous) {
    return NormSpec{2.0, r, s, homogeneous};
}

NormSpec NormSpec::space_time(double q, double r, double s, bool homogeneous) {
    return NormSpec{q, r, s, homogeneous};
}

namespace {

SpectralField sobolev_weighted(const SpectralField& f, const NormSpec& spec) {
    if (spec.s == 0.0) return f;
    if (spec.homogeneous) {
        if (spec.s < 0.0) {
            double scale = norm_l2(f) / std::sqrt(f.grid.volume());
            if (std::abs(f.c[0]) > 1e-12 * std::max(scale, 1e-300))
                throw std::invalid_argument(
                    "norm_toolbox.spatial_norm: homogeneous negative-order norm "
                    "of a non-mean-zero field");
        }
        const double s = spec.s;
        SpectralField out = apply_isotropic_multiplier(f, [s](double ksq) {
            return ksq > 0.0 ? std::pow(ksq, 0.5 * s) : 0.0;
        });
        out.c[0] = cplx{0.0, 0.0};
        return out;
    }
    const double s = spec.s;
    return apply_isotropic_multiplier(
        f, [s](double ksq) { return std::pow(1.0 + ksq, 0.5 * s); });
}

double lr_norm(const SpectralField& f, double r) {
    if (r == 2.0) return norm_l2(f);
    std::vector<double> phys = to_physical(f);
    double cell = 1.0;
    for (int a = 0; a < f.grid.dim; ++a) cell *= f.grid.spacing();
    return lp_norm_physical(phys, r, cell);
}

}  // namespace

double spatial_norm(const SpectralField& f, const NormSpec& spec) {
    if (spec.r < 1.0) throw std::invalid_argument("norm_toolbox.spatial_norm: r must be >= 1");
    return lr_norm(sobolev_weighted(f, spec), spec.r);
}

double spatial_norm(const VectorField& f, const NormSpec& spec) {
    if (spec.r == 2.0 && spec.s == 0.0) return norm_l2(f);
    // pointwise euclidean magnitude of the weighted components, then L^r
    std::vector<std::vector<double>> phys;
    for (int a = 0; a < f.dim(); ++a)
        phys.push_back(to_physical(sobolev_weighted(f[a], spec)));
    std::vector<double> mag(phys[0].size());
    for (std::size_t i = 0; i < mag.size(); ++i) {
        double sq = 0.0;
        for (const auto& p : phys) sq += p[i] * p[i];
        mag[i] = std::sqrt(sq);
    }
    double cell = 1.0;
    for (int a = 0; a < f.grid().dim; ++a) cell *= f.grid().spacing();
    return lp_norm_physical(mag, spec.r, cell);
}

double space_time_norm_values(const std::vector<double>& spatial_norms, double dt_sample,
                              double q) {
    if (q < 1.0)
        throw std::invalid_argument("norm_toolbox.space_time_norm: q must be >= 1");
    if (std::isinf(q)) {
        double m = 0.0;
        for (double v : spatial_norms) m = std::max(m, v);
        return m;
    }
    if (spatial_norms.size() < 2)
        throw std::invalid_argument(
            "norm_toolbox.space_time_norm: fewer than 2 time samples for finite q");
    double s = 0.0;
    for (std::size_t i = 0; i < spatial_norms.size(); ++i) {
        double w = (i == 0 || i + 1 == spatial_norms.size()) ? 0.5 : 1.0;
        s += w * std::pow(spatial_norms[i], q);
    }
    return std::pow(s * dt_sample, 1.0 / q);
}

double space_time_norm(const std::vector<SpectralField>& traj, double dt_sample,
                       const NormSpec& spec) {
    std::vector<double> vals;
    vals.reserve(traj.size());
    for (const auto& f : traj) vals.push_back(spatial_norm(f, spec));
    return space_time_norm_values(vals, dt_sample, spec.q);
}

AdmissiblePair wave_admissible(double q, double r, int dim) {
    if (q < 2.0 || r < 2.0)
        throw std::invalid_argument("norm_toolbox.wave_admissible: exponents must be >= 2");
    if (dim < 2)
        throw std::invalid_argument("norm_toolbox.wave_admissible: dim must be >= 2");
    auto inv = [](double x) { return std::isinf(x) ? 0.0 : 1.0 / x; };
    AdmissiblePair out;
    out.q = q;
    out.r = r;
    out.dim = dim;
    out.admissible = 2.0 * inv(q) <= (dim - 1) * (0.5 - inv(r)) + 1e-12;
    out.gamma = 0.5 * dim - inv(q) - dim * inv(r);
    return out;
}

}  // namespace acnsf
