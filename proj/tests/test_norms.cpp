#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "acnsf/norms.hpp"
#include "acnsf/operators.hpp"
#include "acnsf/random_fields.hpp"
#include "test_util.hpp"

using namespace acnsf;
using namespace acnsf::testutil;

TEST_CASE("spatial norms of sin x1 on the 2pi cube") {
    GridSpec g = make_grid(3, 16);
    SpectralField s = sampled_field(g, [](double x, double, double) { return std::sin(x); });

    const double l2 = std::sqrt(std::pow(two_pi, 3) / 2.0);  // integral of sin^2
    CHECK(rel_err(spatial_norm(s, NormSpec::lebesgue(2.0)), l2) < 1e-12);

    // |k| = 1 eigenfunction: homogeneous norms are s-independent
    for (double ord : {-2.0, -1.0, 0.5, 1.0, 2.0})
        CHECK(rel_err(spatial_norm(s, NormSpec::sobolev(ord, 2.0, true)), l2) < 1e-12);

    const double l4 = std::pow(0.375 * std::pow(two_pi, 3), 0.25);  // integral of sin^4
    CHECK(rel_err(spatial_norm(s, NormSpec::lebesgue(4.0)), l4) < 1e-12);

    // L-infinity is the grid max
    CHECK(rel_err(spatial_norm(s, NormSpec::lebesgue(std::numeric_limits<double>::infinity())),
                  1.0) < 1e-12);
}

TEST_CASE("space-time norms: constants, zero, closed-form decay") {
    GridSpec g = make_grid(3, 16);
    SpectralField s = sampled_field(g, [](double x, double, double) { return std::sin(x); });
    const double l2 = std::sqrt(std::pow(two_pi, 3) / 2.0);

    const int nsamp = 101;
    const double T = 1.0;
    const double dts = T / (nsamp - 1);
    std::vector<SpectralField> constant(nsamp, s);
    CHECK(rel_err(space_time_norm(constant, dts, NormSpec::space_time(4.0, 2.0)), l2) < 1e-12);

    std::vector<SpectralField> zero(nsamp, SpectralField(g));
    CHECK(space_time_norm(zero, dts, NormSpec::space_time(4.0, 2.0)) == 0.0);

    // f(t) = e^{-t} sin x1, q=2: l2 * sqrt((1-e^{-2T})/2)
    const int fine = 2001;
    const double dtf = T / (fine - 1);
    std::vector<SpectralField> decay;
    decay.reserve(fine);
    for (int i = 0; i < fine; ++i) {
        SpectralField f = s;
        scale(f, std::exp(-i * dtf));
        decay.push_back(std::move(f));
    }
    const double want = l2 * std::sqrt((1.0 - std::exp(-2.0 * T)) / 2.0);
    CHECK(rel_err(space_time_norm(decay, dtf, NormSpec::space_time(2.0, 2.0)), want) < 1e-6);

    CHECK_THROWS_AS(space_time_norm({s}, dts, NormSpec::space_time(2.0, 2.0)),
                    std::invalid_argument);
    CHECK(space_time_norm({s}, dts,
                          NormSpec::space_time(std::numeric_limits<double>::infinity(), 2.0)) ==
          doctest::Approx(l2));
}

TEST_CASE("space-time norm converges at second order under stride halving") {
    // trapezoid quadrature of the closed-form decay above
    GridSpec g = make_grid(2, 8);
    SpectralField s = sampled_field(g, [](double x, double, double) { return std::sin(x); });
    const double l2 = norm_l2(s);
    const double T = 1.0;
    const double want = l2 * std::sqrt((1.0 - std::exp(-2.0 * T)) / 2.0);
    std::vector<double> errs;
    for (int nsamp : {51, 101, 201}) {
        const double dts = T / (nsamp - 1);
        std::vector<double> vals;
        for (int i = 0; i < nsamp; ++i) vals.push_back(std::exp(-i * dts) * l2);
        errs.push_back(std::abs(space_time_norm_values(vals, dts, 2.0) - want));
    }
    const double order1 = std::log2(errs[0] / errs[1]);
    const double order2 = std::log2(errs[1] / errs[2]);
    CHECK(order1 > 1.9);
    CHECK(order2 > 1.9);
}

TEST_CASE("space-time power-sum identity across a split") {
    GridSpec g = make_grid(2, 8);
    std::vector<double> vals;
    for (int i = 0; i <= 100; ++i) vals.push_back(1.0 + std::sin(0.17 * i));
    const double dts = 0.01;
    const double q = 4.0;
    const double whole = std::pow(space_time_norm_values(vals, dts, q), q);
    std::vector<double> left(vals.begin(), vals.begin() + 41);
    std::vector<double> right(vals.begin() + 40, vals.end());
    const double split = std::pow(space_time_norm_values(left, dts, q), q) +
                         std::pow(space_time_norm_values(right, dts, q), q);
    CHECK(rel_err(split, whole) < 1e-12);
}

TEST_CASE("wave admissibility: the paper's pairs") {
    AdmissiblePair a = wave_admissible(4.0, 4.0, 3);
    CHECK(a.admissible);
    CHECK(a.gamma == doctest::Approx(0.5).epsilon(1e-12));

    // dual of (q~', r~') = (1, 3/2)
    AdmissiblePair b = wave_admissible(std::numeric_limits<double>::infinity(), 3.0, 3);
    CHECK(b.admissible);
    CHECK(b.gamma == doctest::Approx(0.5).epsilon(1e-12));

    AdmissiblePair c = wave_admissible(2.0, 4.0, 3);
    CHECK_FALSE(c.admissible);  // 1 > 1/2

    CHECK_THROWS_AS(wave_admissible(1.5, 4.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(wave_admissible(4.0, 1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(wave_admissible(4.0, 4.0, 1), std::invalid_argument);
}

TEST_CASE("nonhomogeneous norm is nondecreasing in s (unit-volume box)") {
    GridSpec g = make_grid(3, 16, 1.0);
    SpectralField f = random_scalar_field(g, 5, smooth_spectrum(g), 5);
    f.c[0] = cplx{0.3, 0.0};
    double prev = -1.0;
    for (double s : {-2.0, -1.0, 0.0, 1.0}) {
        double v = spatial_norm(f, NormSpec::sobolev(s, 2.0));
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("duality bound |<f,g>| <= ||f||_s ||g||_{-s}") {
    GridSpec g = make_grid(2, 16);
    for (std::uint64_t seed : {10u, 11u, 12u}) {
        SpectralField f = random_scalar_field(g, seed, smooth_spectrum(g), 5);
        SpectralField h = random_scalar_field(g, seed + 100, smooth_spectrum(g), 5);
        const double lhs = std::abs(inner_l2(f, h));
        for (double s : {0.7, 1.5}) {
            const double rhs = spatial_norm(f, NormSpec::sobolev(s, 2.0)) *
                               spatial_norm(h, NormSpec::sobolev(-s, 2.0));
            CHECK(lhs <= rhs * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("homogeneous negative-order norm requires a mean-zero field") {
    GridSpec g = make_grid(2, 16);
    SpectralField f = random_scalar_field(g, 4, smooth_spectrum(g), 5);
    f.c[0] = cplx{1.0, 0.0};
    CHECK_THROWS_AS(spatial_norm(f, NormSpec::sobolev(-1.0, 2.0, true)), std::invalid_argument);
    f.c[0] = cplx{0.0, 0.0};
    CHECK_NOTHROW(spatial_norm(f, NormSpec::sobolev(-1.0, 2.0, true)));
}

TEST_CASE("Parseval consistency of spatial_norm at s=0, r=2") {
    GridSpec g = make_grid(3, 16);
    SpectralField f = random_scalar_field(g, 8, smooth_spectrum(g), 5);
    CHECK(rel_err(spatial_norm(f, NormSpec::lebesgue(2.0)), norm_l2(f)) < 1e-12);
}
