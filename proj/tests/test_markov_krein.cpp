#include <doctest.h>

#include <cmath>

#include "mkrein/markov_krein.hpp"
#include "mkrein/rng.hpp"

using namespace mkrein;

TEST_CASE("residuals for a point mass are pure roundoff") {
    const auto da = make_measure({0.8});
    const auto sample = random_mean_samples({da, 1.5, 200, 1, 1});
    const std::vector<cplx> grid{cplx(1, 1), cplx(-2, 0.7), cplx(0, 3)};
    const auto report = mk_residual(da, 1.5, sample, grid);
    CHECK(report.max_residual < 1e-12);
}

TEST_CASE("residual at z=1+i for the uniform random mean") {
    const auto half = make_measure({0.0, 1.0});
    const auto sample = random_mean_samples({half, 2.0, 100000, 3, 1}, 4);
    const cplx z(1, 1);
    const std::vector<cplx> grid{z};
    const auto report = mk_residual(half, 2.0, sample, grid);
    // rho^(2) is Uniform[0,1]: E[(z-U)^{-2}] = 1/((z-1) z) in closed form,
    // which the MK right side reproduces; the MC estimate sits in its band
    const cplx closed = 1.0 / ((z - 1.0) * z);
    const cplx rhs = std::exp(-2.0 * g_function(half, z));
    CHECK(std::abs(rhs - closed) < 1e-14);
    CHECK(report.per_point[0] <= report.tol_3sigma[0]);
}

TEST_CASE("Monte Carlo mean of (2-X)^{-1} matches 1/sqrt(2)") {
    // right side of the correspondence at c=1, z=2 in closed form
    const auto half = make_measure({0.0, 1.0});
    const auto sample = random_mean_samples({half, 1.0, 100000, 5, 1}, 4);
    double sum = 0.0, sq = 0.0;
    for (double x : sample.values) {
        const double v = 1.0 / (2.0 - x);
        sum += v;
        sq += v * v;
    }
    const double n = static_cast<double>(sample.values.size());
    const double mean = sum / n;
    const double sd = std::sqrt((sq / n - mean * mean) / n);
    CHECK(std::fabs(mean - 1.0 / std::sqrt(2.0)) < 3.0 * sd);
}

TEST_CASE("grid points must stay off the real axis") {
    const auto half = make_measure({0.0, 1.0});
    const auto sample = random_mean_samples({half, 1.0, 100, 1, 1});
    const std::vector<cplx> grid{cplx(2.0, 0.1)};
    CHECK_THROWS_AS(mk_residual(half, 1.0, sample, grid), InvalidArgument);
}

TEST_CASE("moment recursion: point mass and uniform closed forms") {
    const double a = 0.6;
    const auto point = mk_moments(moments(make_measure({a}), 8), 2.7, 8);
    for (int n = 1; n <= 8; ++n)
        CHECK(point.values[n - 1] == doctest::Approx(std::pow(a, n)));

    const auto m_half = moments(make_measure({0.0, 1.0}), 8);
    const auto uni = mk_moments(m_half, 2.0, 8);
    for (int n = 1; n <= 8; ++n)
        CHECK(std::fabs(uni.values[n - 1] - 1.0 / (n + 1)) < 1e-12);

    const auto arcsine = mk_moments(m_half, 1.0, 8);
    CHECK(arcsine.values[0] == doctest::Approx(0.5));
    CHECK(arcsine.values[1] == doctest::Approx(3.0 / 8.0));
    CHECK(arcsine.values[2] == doctest::Approx(5.0 / 16.0));
}

TEST_CASE("forward and inverse moment maps round-trip") {
    PhiloxStream rng(41, 0);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> atoms;
        for (int i = 0; i < 4; ++i)
            atoms.push_back(3.0 * (rng.next_double() - 0.5));
        const double c = 0.2 + 3.0 * rng.next_double();
        const auto m = moments(make_measure(atoms), 10);
        const auto mp = mk_moments(m, c, 10);
        const auto back = mk_moments_inverse(mp, c, 10);
        for (int n = 0; n < 10; ++n)
            CHECK(std::fabs(back.values[n] - m.values[n]) < 1e-9);
    }
}

TEST_CASE("cumulants: closed forms and round trip") {
    MomentVector point;
    point.order = 6;
    for (int n = 1; n <= 6; ++n) point.values.push_back(std::pow(0.4, n));
    const auto kp = c_cumulants(point);
    CHECK(kp.kappa_tilde[0] == doctest::Approx(0.4));
    for (int l = 2; l <= 6; ++l)
        CHECK(std::fabs(kp.kappa_tilde[l - 1]) < 1e-12);

    // Uniform[0,1] through the recursion at c=2
    const auto uni =
        mk_moments(moments(make_measure({0.0, 1.0}), 6), 2.0, 6);
    const auto ku = c_cumulants(uni);
    CHECK(ku.kappa_tilde[0] == doctest::Approx(0.5));
    CHECK(ku.kappa_tilde[1] == doctest::Approx(1.0 / 12.0));
    CHECK(std::fabs(ku.kappa_tilde[2]) < 1e-12);
    CHECK(ku.kappa[1] == doctest::Approx(1.0 / 12.0));
    CHECK(ku.kappa[2] == doctest::Approx(0.0));

    PhiloxStream rng(43, 0);
    for (int rep = 0; rep < 20; ++rep) {
        MomentVector m;
        m.order = 8;
        for (int n = 0; n < 8; ++n)
            m.values.push_back(2.0 * (rng.next_double() - 0.5));
        const auto round = cumulants_to_moments(c_cumulants(m));
        for (int n = 0; n < 8; ++n)
            CHECK(std::fabs(round.values[n] - m.values[n]) < 1e-10);
    }
}

TEST_CASE("kappa vectors add under the probe composition") {
    PhiloxStream rng(47, 0);
    for (int rep = 0; rep < 10; ++rep) {
        const auto draw = [&] {
            std::vector<double> atoms;
            for (int i = 0; i < 3; ++i)
                atoms.push_back(2.0 * (rng.next_double() - 0.5));
            return make_measure(atoms);
        };
        const auto r1 = draw(), r2 = draw();
        const double c = 0.5 + 2.0 * rng.next_double();
        const auto k1 =
            c_cumulants(mk_moments(moments(r1, 8), c, 8));
        const auto k2 =
            c_cumulants(mk_moments(moments(r2, 8), c, 8));
        const auto probe = conjecture_probe(r1, r2, c, 8);
        // moments of mu map back to exactly the summed kappa vector
        const auto k_mu =
            c_cumulants(mk_moments(probe.mu_moments, c, 8));
        for (int l = 0; l < 8; ++l)
            CHECK(std::fabs(k_mu.kappa[l] - (k1.kappa[l] + k2.kappa[l])) <
                  1e-8 * (1.0 + std::fabs(k1.kappa[l]) +
                          std::fabs(k2.kappa[l])));
    }
}

TEST_CASE("conjecture probe degenerate cases") {
    const auto zero = make_measure({0.0});
    const auto p0 = conjecture_probe(zero, zero, 2.0, 6);
    for (double m : p0.mu_moments.values) CHECK(std::fabs(m) < 1e-14);
    CHECK(std::fabs(p0.hankel_min_eig) < 1e-12);

    const auto pa = conjecture_probe(make_measure({0.7}),
                                     make_measure({-0.2}), 1.3, 6);
    for (int n = 1; n <= 6; ++n)
        CHECK(pa.mu_moments.values[n - 1] ==
              doctest::Approx(std::pow(0.5, n)));
    CHECK(std::fabs(pa.hankel_min_eig) < 1e-10);

    CHECK_THROWS_AS(conjecture_probe(zero, zero, 1.0, 7), InvalidArgument);
}

TEST_CASE("probe on the two-point measure stays PSD") {
    const auto half = make_measure({0.0, 1.0});
    const auto probe = conjecture_probe(half, half, 2.0, 8);
    CHECK(probe.hankel_min_eig >= -1e-9);
    CHECK(probe.mu_moments.values[0] == doctest::Approx(1.0));
}

TEST_CASE("random probes stay PSD") {
    PhiloxStream rng(53, 0);
    for (int rep = 0; rep < 25; ++rep) {
        const auto draw = [&] {
            std::vector<double> atoms;
            for (int i = 0; i < 4; ++i)
                atoms.push_back(2.0 * (rng.next_double() - 0.5));
            return make_measure(atoms);
        };
        const double c = 0.3 + 3.0 * rng.next_double();
        const auto probe = conjecture_probe(draw(), draw(), c, 8);
        CHECK(probe.hankel_min_eig >= -1e-9);
    }
}

TEST_CASE("three evaluation paths agree on the uniform transform") {
    const auto half = make_measure({0.0, 1.0});
    const double want = std::exp(1.0) - 1.0;

    const cplx quad = fourier_rho_c(half, 2.0, 1.0, 1e-9).value;
    CHECK(std::fabs(quad.real() - want) < 1e-8);

    const auto mp = mk_moments(moments(half, 12), 2.0, 12);
    double series = 1.0, fact = 1.0;
    for (int n = 1; n <= 12; ++n) {
        fact *= n;
        series += mp.values[n - 1] / fact;
    }
    CHECK(std::fabs(series - want) < 1e-6);

    const auto sample = random_mean_samples({half, 2.0, 100000, 8, 1}, 4);
    double sum = 0.0, sq = 0.0;
    for (double x : sample.values) {
        const double e = std::exp(x);
        sum += e;
        sq += e * e;
    }
    const double n = static_cast<double>(sample.values.size());
    const double mean = sum / n;
    const double sd = std::sqrt((sq / n - mean * mean) / n);
    CHECK(std::fabs(mean - want) < 3.0 * sd);
}

TEST_CASE("order caps") {
    const auto m = moments(make_measure({0.0, 1.0}), 24);
    CHECK_THROWS_AS(mk_moments(m, 1.0, 25), InvalidArgument);
    CHECK_NOTHROW(mk_moments(m, 1.0, 24));
}
