#include <doctest.h>

#include <cmath>

#include "mkrein/bessel.hpp"
#include "mkrein/dirichlet.hpp"
#include "mkrein/measure.hpp"

using namespace mkrein;

namespace {

cplx bessel(std::vector<double> pts, cplx u, double theta,
            double tol = 1e-9) {
    return bessel_rank_one({std::move(pts), u, theta, tol}).value;
}

} // namespace

TEST_CASE("single point reduces to a plain exponential") {
    for (double theta : {0.3, 1.0, 2.7})
        for (cplx u : {cplx(0.8, 0), cplx(0, 1.5), cplx(-1, 0.5)}) {
            const cplx got = bessel({0.4}, u, theta);
            CHECK(std::abs(got - std::exp(0.4 * u)) < 1e-7);
        }
}

TEST_CASE("two points at theta=1: transform of Uniform[0,1]") {
    CHECK(std::abs(bessel({0, 1}, 1.0, 1.0) - (std::exp(1.0) - 1.0)) < 1e-8);
    const cplx u(0, 2);
    const cplx want = (std::exp(u) - 1.0) / u;
    CHECK(std::abs(bessel({0, 1}, u, 1.0) - want) < 1e-8);
}

TEST_CASE("residue oracle closed forms") {
    CHECK(std::abs(bessel_theta_one(std::vector<double>{0, 1}, 1.0) -
                   (std::exp(1.0) - 1.0)) < 1e-14);
    const double e = std::exp(1.0);
    const double want3 = 2.0 * (0.5 - e + e * e / 2.0); // = (e-1)^2
    CHECK(bessel_theta_one(std::vector<double>{0, 1, 2}, 1.0).real() ==
          doctest::Approx(want3));
    CHECK(want3 == doctest::Approx(2.952492));
    CHECK_THROWS_AS(bessel_theta_one(std::vector<double>{1, 1}, 1.0),
                    DegenerateSpectrum);
    CHECK_THROWS_AS(bessel_theta_one(std::vector<double>{0, 1}, cplx(0, 0)),
                    InvalidArgument);
}

TEST_CASE("quadrature matches the residue oracle in all four sgn cases") {
    const double tol = 1e-9;
    for (cplx u : {cplx(1, 0), cplx(-2, 0), cplx(0, 3), cplx(0, -3),
                   cplx(1, 2)})
        for (int N : {2, 4, 6}) {
            std::vector<double> pts;
            for (int j = 0; j < N; ++j) pts.push_back(j);
            const cplx got = bessel(pts, u, 1.0, tol);
            const cplx want = bessel_theta_one(pts, u);
            CHECK(std::abs(got - want) <= 10 * tol * (1.0 + std::abs(want)));
        }
}

TEST_CASE("translation and scaling covariance") {
    const std::vector<double> pts{-0.5, 0.3, 1.2};
    const double tol = 1e-9;
    for (cplx u : {cplx(1.2, 0), cplx(0, 1.5)}) {
        const cplx base = bessel(pts, u, 0.7, tol);
        const double t = 0.8;
        std::vector<double> shifted;
        for (double a : pts) shifted.push_back(a + t);
        CHECK(std::abs(bessel(shifted, u, 0.7, tol) -
                       std::exp(u * t) * base) <= 10 * tol);

        const double lam = 1.7;
        std::vector<double> scaled;
        for (double a : pts) scaled.push_back(lam * a);
        CHECK(std::abs(bessel(scaled, u, 0.7, tol) -
                       bessel(pts, lam * u, 0.7, tol)) <= 10 * tol);
    }
}

TEST_CASE("normalization as u approaches zero") {
    const std::vector<double> pts{0, 1, 2};
    const double eps = 1e-3;
    const double m1 = 1.0; // mean of the counting measure on {0,1,2}
    const cplx got = bessel(pts, eps, 0.9, 1e-10);
    CHECK(std::abs(got - (1.0 + eps * m1)) < 1e-4);
}

TEST_CASE("agrees with the Fourier transform path for weighted c = N*theta") {
    const double tol = 1e-9;
    for (int N : {2, 3}) {
        std::vector<double> pts;
        for (int j = 0; j < N; ++j) pts.push_back(0.5 * j - 0.3);
        const auto rho = DiscreteMeasure::uniform(pts);
        for (double c : {0.5, 2.0, 3.5})
            for (cplx u : {cplx(1, 0), cplx(0, 2)}) {
                const cplx via_bessel = bessel(pts, u, c / N, tol);
                const cplx via_transform =
                    fourier_rho_c(rho, c, u, tol).value;
                CHECK(std::abs(via_bessel - via_transform) <= 20 * tol);
            }
    }
}

TEST_CASE("coincident atoms are fine for the quadrature path") {
    // {0,0,1,1} at theta is the same function as {0,1} at 2*theta
    const cplx a = bessel({0, 0, 1, 1}, 1.0, 0.6);
    const cplx b = bessel({0, 1}, 1.0, 1.2);
    CHECK(std::abs(a - b) < 1e-8);
}

TEST_CASE("real inputs give a real value") {
    const auto r = bessel_rank_one({{0.0, 0.7, 2.0}, cplx(1.3, 0), 0.8, 1e-9});
    CHECK(r.value.imag() == 0.0);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(bessel({0, 1}, cplx(0, 0), 1.0), InvalidArgument);
    CHECK_THROWS_AS(bessel({0, 1}, 1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(bessel({}, 1.0, 1.0), InvalidArgument);
}
