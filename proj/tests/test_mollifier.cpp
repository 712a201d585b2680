#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "acnsf/mollifier.hpp"
#include "acnsf/norms.hpp"
#include "acnsf/operators.hpp"
#include "acnsf/random_fields.hpp"
#include "test_util.hpp"

using namespace acnsf;
using namespace acnsf::testutil;

TEST_CASE("unit mass: constants are fixed points") {
    GridSpec g = make_grid(2, 32);
    std::vector<double> c(g.total(), 3.7);
    SpectralField f = to_spectral(g, c);
    SpectralField m = mollify(f, MollifierSpec{1.0});
    CHECK(rel_diff(m, f) < 1e-12);
    std::vector<double> mult = mollifier_multiplier(g, MollifierSpec{1.0});
    CHECK(rel_err(mult[0], 1.0) < 1e-12);
}

TEST_CASE("kernel transform is bounded by 1 (non-negative kernel)") {
    for (double alpha : {0.8, 1.2}) {
        GridSpec g = make_grid(2, 32);
        std::vector<double> mult = mollifier_multiplier(g, MollifierSpec{alpha});
        double worst = 0.0;
        for (double m : mult) worst = std::max(worst, std::abs(m));
        CHECK(worst <= 1.0 + 1e-13);
        // hence mollification contracts L2
        SpectralField f = random_scalar_field(g, 3, smooth_spectrum(g), 9);
        CHECK(norm_l2(mollify(f, MollifierSpec{alpha})) <= norm_l2(f) * (1.0 + 1e-13));
    }
}

TEST_CASE("single mode agrees with direct quadrature convolution") {
    GridSpec g = make_grid(2, 32);
    const MollifierSpec m{1.0};
    SpectralField f = sampled_field(g, [](double x, double, double) { return std::sin(x); });
    SpectralField viaFourier = mollify(f, m);

    // reconstruct the kernel samples from the multiplier, then convolve on the grid
    std::vector<double> mult = mollifier_multiplier(g, m);
    SpectralField khat(g);
    for (std::size_t i = 0; i < khat.size(); ++i) khat.c[i] = cplx{mult[i] / g.volume(), 0.0};
    std::vector<double> kernel = to_physical(khat);
    std::vector<double> fphys = to_physical(f);

    const int n = g.n;
    double cell = g.spacing() * g.spacing();
    std::vector<double> conv(g.total(), 0.0);
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            double acc = 0.0;
            for (int jx = 0; jx < n; ++jx)
                for (int jy = 0; jy < n; ++jy) {
                    int rx = (ix - jx + n) % n, ry = (iy - jy + n) % n;
                    acc += kernel[static_cast<std::size_t>(jx) * n + jy] *
                           fphys[static_cast<std::size_t>(rx) * n + ry];
                }
            conv[static_cast<std::size_t>(ix) * n + iy] = acc * cell;
        }
    SpectralField direct = to_spectral(g, conv);
    CHECK(rel_diff(viaFourier, direct) < 1e-12);

    // and the result is j_hat(alpha; k=1) * sin x
    std::size_t idx1 = static_cast<std::size_t>(1) * n;  // mode (1,0)
    double jhat = (viaFourier.c[idx1] / f.c[idx1]).real();
    CHECK(jhat == doctest::Approx(mult[idx1]).epsilon(1e-12));
}

TEST_CASE("smoothing error decays monotonically as alpha shrinks") {
    GridSpec g = make_grid(2, 64);
    SpectralField f = random_scalar_field(g, 17, smooth_spectrum(g), 6);
    double prev = std::numeric_limits<double>::infinity();
    for (double alpha : {1.2, 0.9, 0.7, 0.55, 0.45}) {
        double err = norm_l2(subtract(f, mollify(f, MollifierSpec{alpha})));
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("mollify validates resolution and support") {
    GridSpec g = make_grid(2, 16);  // spacing ~0.39, 4h ~ 1.57
    SpectralField f(g);
    CHECK_THROWS_WITH_AS(mollify(f, MollifierSpec{0.5}), doctest::Contains("under-resolved"),
                         std::invalid_argument);
    CHECK_THROWS_AS(mollify(f, MollifierSpec{2.0}), std::invalid_argument);  // > length/4
}

TEST_CASE("mollification commutes with Fourier multipliers") {
    GridSpec g = make_grid(2, 32);
    SpectralField f = random_scalar_field(g, 31, smooth_spectrum(g), 9);
    MollifierSpec m{0.9};
    CHECK(rel_diff(laplacian(mollify(f, m)), mollify(laplacian(f), m)) < 1e-12);
}

TEST_CASE("friedrichs y1: zero field, single mode, domain errors") {
    GridSpec g = make_grid(2, 32);
    SpectralField zero(g);
    RatioTable t0 = check_friedrichs_y1(zero, {0.9, 0.8}, 2.0);
    for (const RatioRow& r : t0.rows) CHECK(r.ratio == 0.0);

    SpectralField s = sampled_field(g, [](double x, double, double) { return std::sin(x); });
    RatioTable t = check_friedrichs_y1(s, {1.2, 0.9, 0.8}, 2.0);
    // sigma = 0 at p = 2: ratio = |1 - j_hat(alpha)|/alpha, which decays with alpha
    for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i].ratio < t.rows[i - 1].ratio);
    CHECK(std::isfinite(t.max_ratio));

    GridSpec g3 = make_grid(3, 16);
    SpectralField f3 = random_scalar_field(g3, 2, smooth_spectrum(g3), 5);
    CHECK_THROWS_WITH_AS(check_friedrichs_y1(f3, {1.0}, 8.0), doctest::Contains("range"),
                         std::invalid_argument);

    SpectralField withmean = s;
    withmean.c[0] = cplx{1.0, 0.0};
    CHECK_THROWS_AS(check_friedrichs_y1(withmean, {1.0}, 2.0), std::invalid_argument);
}

TEST_CASE("friedrichs y1 slope on a genuinely-H1 field (3d, small grid)") {
    // spectrum |k|^{-(d/2+1+0.01)} is exactly H1; numerator should decay
    // at about alpha^{1-sigma}
    GridSpec g = make_grid(3, 64, 1.0);
    SpectralField f = random_scalar_field_unit(g, 5, power_law_spectrum(2.51), 31);
    std::vector<double> alphas = {0.25, 0.125, 0.0625};
    RatioTable t4 = check_friedrichs_y1(f, alphas, 4.0);   // sigma = 3/4
    CHECK(t4.numerator_slope >= 0.25 - 0.1);
    CHECK(std::isfinite(t4.max_ratio));
    RatioTable t2 = check_friedrichs_y1(f, alphas, 2.0);   // sigma = 0
    CHECK(t2.numerator_slope >= 1.0 - 0.1);
}

TEST_CASE("friedrichs y2: multiplier bound, growth cancellation, domain errors") {
    GridSpec g = make_grid(3, 64);  // spacing ~0.1 resolves alpha down to ~0.4
    SpectralField s = sampled_field(g, [](double x, double, double) { return std::sin(x); });
    std::vector<double> mult9 = mollifier_multiplier(g, MollifierSpec{0.9});

    RatioTable t = check_friedrichs_y2(s, {0.9}, 0.0, 2.0, 2.0);
    std::size_t idx1 = static_cast<std::size_t>(1) * 64 * 64;
    CHECK(t.rows[0].ratio == doctest::Approx(std::abs(mult9[idx1])).epsilon(1e-10));
    CHECK(t.rows[0].ratio <= 1.0 + 1e-12);

    // s=0, q=2, p=inf in 3d: bound grows like alpha^{-3/2}, ratios fall
    RatioTable tinf = check_friedrichs_y2(s, {0.9, 0.7, 0.5}, 0.0, 2.0,
                                          std::numeric_limits<double>::infinity());
    for (std::size_t i = 1; i < tinf.rows.size(); ++i)
        CHECK(tinf.rows[i].ratio < tinf.rows[i - 1].ratio);

    // s=1, q=p=2: ratios bounded uniformly
    SpectralField f = random_scalar_field(g, 23, smooth_spectrum(g), 10);
    RatioTable tb = check_friedrichs_y2(f, {0.9, 0.7, 0.5, 0.45}, 1.0, 2.0, 2.0);
    CHECK(tb.max_ratio < 10.0);
    for (const RatioRow& r : tb.rows) CHECK(std::isfinite(r.ratio));

    CHECK_THROWS_WITH_AS(check_friedrichs_y2(f, {0.9}, 0.0, 4.0, 2.0),
                         doctest::Contains("q <= p"), std::invalid_argument);
    CHECK_THROWS_AS(check_friedrichs_y2(f, {1.5}, 0.0, 2.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(check_friedrichs_y2(f, {0.9}, -1.0, 2.0, 2.0), std::invalid_argument);
}

TEST_CASE("ratio tables serialize to CSV rows") {
    RatioTable t;
    t.rows.push_back(RatioRow{0.5, 1.25, 2.5, 0.5});
    std::string csv = ratio_table_csv(t);
    CHECK(csv.find("alpha,numerator,bound,ratio") == 0);
    CHECK(csv.find("5.0000000000000000e-01") != std::string::npos);
}
