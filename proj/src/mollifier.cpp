#include "acnsf/mollifier.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "acnsf/fitting.hpp"
#include "acnsf/norms.hpp"
#include "acnsf/operators.hpp"

namespace acnsf {

namespace {

double bump(double r) {  // unnormalized C-infinity bump on |r| < 1
    double rsq = r * r;
    if (rsq >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - rsq));
}

void validate(const GridSpec& g, const MollifierSpec& m) {
    if (!(m.alpha > 0.0))
        throw std::invalid_argument("mollifier_lab.mollify: alpha must be positive");
    if (m.alpha < 4.0 * g.spacing())
        throw std::invalid_argument(
            "mollifier_lab.mollify: under-resolved kernel (alpha < 4 * grid spacing)");
    if (m.alpha > 0.25 * g.length + 1e-15)
        throw std::invalid_argument(
            "mollifier_lab.mollify: kernel support exceeds length/4");
}

}  // namespace

std::vector<double> mollifier_multiplier(const GridSpec& grid, const MollifierSpec& m) {
    validate(grid, m);
    const int n = grid.n;
    const double h = grid.spacing();
    const double L = grid.length;
    // min-image distance from the origin keeps the sampled kernel even
    auto coord = [&](int i) {
        double x = i * h;
        if (x > 0.5 * L) x -= L;
        return x;
    };
    std::vector<cplx> samples(grid.total());
    double mass = 0.0;
    if (grid.dim == 2) {
        std::size_t flat = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j, ++flat) {
                double x = coord(i), y = coord(j);
                double v = bump(std::sqrt(x * x + y * y) / m.alpha);
                samples[flat] = cplx{v, 0.0};
                mass += v;
            }
    } else {
        std::size_t flat = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k, ++flat) {
                    double x = coord(i), y = coord(j), z = coord(k);
                    double v = bump(std::sqrt(x * x + y * y + z * z) / m.alpha);
                    samples[flat] = cplx{v, 0.0};
                    mass += v;
                }
    }
    double cell = 1.0;
    for (int a = 0; a < grid.dim; ++a) cell *= h;
    const double norm = 1.0 / (mass * cell);  // unit mass after quadrature
    for (auto& s : samples) s *= norm;

    std::vector<cplx> hat(grid.total());
    detail::fft_forward_normalized(grid.dim, n, samples.data(), hat.data());
    // multiplier = V * j_hat (real for the even kernel; imaginary part is rounding)
    std::vector<double> mult(grid.total());
    const double V = grid.volume();
    for (std::size_t i = 0; i < mult.size(); ++i) mult[i] = V * hat[i].real();
    return mult;
}

SpectralField mollify(const SpectralField& f, const MollifierSpec& m) {
    std::vector<double> mult = mollifier_multiplier(f.grid, m);
    SpectralField out = f;
    for (std::size_t i = 0; i < out.size(); ++i) out.c[i] *= mult[i];
    return out;
}

RatioTable check_friedrichs_y1(const SpectralField& f, const std::vector<double>& alphas,
                               double p) {
    const int d = f.grid.dim;
    if (p < 2.0 || (d == 3 && p > 6.0) || (d == 2 && std::isinf(p)))
        throw std::invalid_argument(
            "mollifier_lab.check_friedrichs_y1: p out of the lemma's range");
    const double fscale = norm_l2(f) / std::sqrt(f.grid.volume());
    if (std::abs(f.c[0]) > 1e-10 * std::max(fscale, 1e-300))
        throw std::invalid_argument("mollifier_lab.check_friedrichs_y1: f must be mean-zero");

    const double sigma = d * (0.5 - 1.0 / p);
    const double grad = std::sqrt(grad_norm_sq(f));
    RatioTable t;
    std::vector<double> la, ln;
    for (double alpha : alphas) {
        SpectralField diff = subtract(f, mollify(f, MollifierSpec{alpha}));
        double num = spatial_norm(diff, NormSpec::lebesgue(p));
        double bound = std::pow(alpha, 1.0 - sigma) * grad;
        RatioRow row{alpha, num, bound, bound > 0.0 ? num / bound : 0.0};
        t.rows.push_back(row);
        t.max_ratio = std::max(t.max_ratio, row.ratio);
        if (num > 0.0) {
            la.push_back(std::log(alpha));
            ln.push_back(std::log(num));
        }
    }
    t.numerator_slope = la.size() >= 2 ? linear_fit(la, ln).slope : 0.0;
    return t;
}

RatioTable check_friedrichs_y2(const SpectralField& f, const std::vector<double>& alphas,
                               double s, double q, double p) {
    if (q > p)
        throw std::invalid_argument("mollifier_lab.check_friedrichs_y2: requires q <= p");
    if (s < 0.0)
        throw std::invalid_argument("mollifier_lab.check_friedrichs_y2: requires s >= 0");
    for (double a : alphas)
        if (!(a > 0.0 && a < 1.0))
            throw std::invalid_argument(
                "mollifier_lab.check_friedrichs_y2: alphas must lie in (0,1)");

    const int d = f.grid.dim;
    const double control = spatial_norm(f, NormSpec::sobolev(-s, q));
    RatioTable t;
    std::vector<double> la, ln;
    for (double alpha : alphas) {
        SpectralField smooth = mollify(f, MollifierSpec{alpha});
        double num = spatial_norm(smooth, NormSpec::lebesgue(p));
        double bound = std::pow(alpha, -s - d * (1.0 / q - 1.0 / p)) * control;
        RatioRow row{alpha, num, bound, bound > 0.0 ? num / bound : 0.0};
        t.rows.push_back(row);
        t.max_ratio = std::max(t.max_ratio, row.ratio);
        if (num > 0.0) {
            la.push_back(std::log(alpha));
            ln.push_back(std::log(num));
        }
    }
    t.numerator_slope = la.size() >= 2 ? linear_fit(la, ln).slope : 0.0;
    return t;
}

std::string ratio_table_csv(const RatioTable& t) {
    std::string out = "alpha,numerator,bound,ratio\n";
    char buf[160];
    for (const RatioRow& r : t.rows) {
        std::snprintf(buf, sizeof buf, "%.16e,%.16e,%.16e,%.16e\n", r.alpha, r.numerator,
                      r.bound, r.ratio);
        out += buf;
    }
    return out;
}

}  // namespace acnsf
