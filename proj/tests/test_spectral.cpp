#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "acnsf/grid.hpp"
#include "acnsf/operators.hpp"
#include "acnsf/random_fields.hpp"
#include "test_util.hpp"

using namespace acnsf;
using namespace acnsf::testutil;

TEST_CASE("make_grid validates its arguments") {
    GridSpec g = make_grid(3, 32, two_pi, 1.5);
    CHECK(g.total() == 32u * 32u * 32u);
    CHECK(GridSpec::mode_of_index(0, 32) == 0);
    CHECK(GridSpec::mode_of_index(16, 32) == 16);
    CHECK(GridSpec::mode_of_index(17, 32) == -15);
    CHECK(g.padded_n() == 48);

    CHECK_NOTHROW(make_grid(2, 8, two_pi, 1.5));  // smallest valid 2D grid
    CHECK_THROWS_WITH_AS(make_grid(3, 7, two_pi, 1.5),
                         doctest::Contains("n must be even"), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(4, 32), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 6), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 32, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 32, two_pi, 1.7), std::invalid_argument);
}

TEST_CASE("transform conventions: mean and single modes") {
    GridSpec g = make_grid(3, 16);
    std::vector<double> ones(g.total(), 1.0);
    SpectralField f = to_spectral(g, ones);
    CHECK(std::abs(f.c[0] - cplx{1.0, 0.0}) < 1e-14);
    double rest = 0.0;
    for (std::size_t i = 1; i < f.size(); ++i) rest = std::max(rest, std::abs(f.c[i]));
    CHECK(rest < 1e-14);

    SpectralField s = sampled_field(g, [](double x, double, double) { return std::sin(x); });
    // sin x1 = -i/2 e^{i x1} + i/2 e^{-i x1}
    std::size_t plus = static_cast<std::size_t>(1) * 16 * 16;
    std::size_t minus = static_cast<std::size_t>(15) * 16 * 16;
    CHECK(std::abs(s.c[plus] - cplx{0.0, -0.5}) < 1e-14);
    CHECK(std::abs(s.c[minus] - cplx{0.0, 0.5}) < 1e-14);

    CHECK_THROWS_AS(to_spectral(g, std::vector<double>(7)), std::invalid_argument);
}

TEST_CASE("round trip to_physical . to_spectral is the identity") {
    for (int dim : {2, 3}) {
        GridSpec g = make_grid(dim, 16);
        std::mt19937_64 rng(42);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        std::vector<double> phys(g.total());
        for (double& v : phys) v = unif(rng);
        SpectralField f = to_spectral(g, phys);
        CHECK(hermitian_defect(f) < 1e-13);
        std::vector<double> back = to_physical(f);
        double worst = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < phys.size(); ++i) {
            worst = std::max(worst, std::abs(back[i] - phys[i]));
            scale = std::max(scale, std::abs(phys[i]));
        }
        CHECK(worst / scale < 1e-12);
    }
}

TEST_CASE("differential operators on eigenfunctions") {
    GridSpec g = make_grid(3, 16);
    SpectralField s = sampled_field(g, [](double x, double, double) { return std::sin(x); });

    SpectralField lap = laplacian(s);
    SpectralField minus_s = s;
    scale(minus_s, -1.0);
    CHECK(rel_diff(lap, minus_s) < 1e-13);

    SpectralField invlap = inverse_laplacian(s);
    CHECK(rel_diff(invlap, minus_s) < 1e-13);

    VectorField gr = gradient(s);
    SpectralField cosx = sampled_field(g, [](double x, double, double) { return std::cos(x); });
    CHECK(rel_diff(gr[0], cosx) < 1e-13);
    CHECK(norm_l2(gr[1]) < 1e-13);

    SpectralField withmean = s;
    withmean.c[0] = cplx{0.5, 0.0};
    CHECK_THROWS_WITH_AS(inverse_laplacian(withmean),
                         doctest::Contains("undefined on means"), std::invalid_argument);
}

TEST_CASE("laplacian round trip on random mean-zero fields") {
    GridSpec g = make_grid(3, 16);
    SpectralField f = random_scalar_field(g, 7, smooth_spectrum(g), 5);
    SpectralField back = laplacian(inverse_laplacian(f));
    CHECK(rel_diff(back, f) < 1e-10);
}

TEST_CASE("operators commute pairwise on band-limited fields") {
    GridSpec g = make_grid(2, 16);
    SpectralField f = random_scalar_field(g, 11, smooth_spectrum(g), 5);
    // gradient then laplacian vs laplacian then gradient
    VectorField a = gradient(laplacian(f));
    VectorField b(g);
    {
        VectorField gf = gradient(f);
        for (int c = 0; c < g.dim; ++c) b[c] = laplacian(gf[c]);
    }
    CHECK(rel_diff(a, b) < 1e-12);
    // divergence(gradient) commutes with laplacian
    SpectralField d1 = divergence(gradient(laplacian(f)));
    SpectralField d2 = laplacian(divergence(gradient(f)));
    CHECK(rel_diff(d1, d2) < 1e-12);
}

TEST_CASE("dealias product: identities and the convolution oracle") {
    GridSpec g = make_grid(2, 16);
    SpectralField s = sampled_field(g, [](double x, double, double) { return std::sin(x); });

    SpectralField prod = dealias_product(s, s);
    SpectralField expect = sampled_field(
        g, [](double x, double, double) { return 0.5 * (1.0 - std::cos(2.0 * x)); });
    CHECK(rel_diff(prod, expect) < 1e-13);

    std::vector<double> ones(g.total(), 1.0);
    SpectralField unit = to_spectral(g, ones);
    SpectralField f = random_scalar_field(g, 3, smooth_spectrum(g), 5);
    f.c[0] = cplx{0.37, 0.0};  // include a mean and Nyquist-free content
    CHECK(rel_diff(dealias_product(unit, f), f) < 1e-13);

    // band-limited inputs (bandwidth <= n/3): exact coefficient convolution
    const int band = 5;
    SpectralField a = random_scalar_field(g, 5, smooth_spectrum(g), band);
    SpectralField b = random_scalar_field(g, 6, smooth_spectrum(g), band);
    SpectralField oracle = convolution_oracle(a, b, band);
    CHECK(rel_diff(dealias_product(a, b), oracle) < 1e-12);

    GridSpec g3 = make_grid(3, 16);
    SpectralField a3 = random_scalar_field(g3, 8, smooth_spectrum(g3), band);
    SpectralField b3 = random_scalar_field(g3, 9, smooth_spectrum(g3), band);
    CHECK(rel_diff(dealias_product(a3, b3), convolution_oracle(a3, b3, band)) < 1e-12);

    GridSpec other = make_grid(2, 32);
    SpectralField fo(other);
    CHECK_THROWS_WITH_AS(dealias_product(s, fo), doctest::Contains("grid mismatch"),
                         std::invalid_argument);
}

TEST_CASE("dealias product is symmetric and bilinear") {
    GridSpec g = make_grid(2, 16);
    SpectralField a = random_scalar_field(g, 21, smooth_spectrum(g), 5);
    SpectralField a2 = random_scalar_field(g, 22, smooth_spectrum(g), 5);
    SpectralField b = random_scalar_field(g, 23, smooth_spectrum(g), 5);

    CHECK(rel_diff(dealias_product(a, b), dealias_product(b, a)) < 1e-13);

    SpectralField lin = a;
    scale(lin, 0.7);
    axpy(lin, -1.3, a2);
    SpectralField lhs = dealias_product(lin, b);
    SpectralField rhs = dealias_product(a, b);
    scale(rhs, 0.7);
    axpy(rhs, -1.3, dealias_product(a2, b));
    CHECK(rel_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("Parseval: quadrature L2 equals coefficient l2") {
    for (int dim : {2, 3}) {
        GridSpec g = make_grid(dim, 16);
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        std::vector<double> phys(g.total());
        for (double& v : phys) v = unif(rng);
        SpectralField f = to_spectral(g, phys);
        double cell = 1.0;
        for (int a = 0; a < dim; ++a) cell *= g.spacing();
        double quad = lp_norm_physical(phys, 2.0, cell);
        CHECK(rel_err(norm_l2(f), quad) < 1e-12);
    }
}
