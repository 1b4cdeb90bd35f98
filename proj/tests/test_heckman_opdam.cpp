#include <doctest.h>

#include <cmath>

#include "mkrein/bessel.hpp"
#include "mkrein/dirichlet.hpp"
#include "mkrein/heckman_opdam.hpp"
#include "mkrein/measure.hpp"

using namespace mkrein;

namespace {

cplx ho(std::vector<double> pts, cplx u, double theta, double tol = 1e-9) {
    return ho_rank_one({std::move(pts), u, theta, tol}).value;
}

} // namespace

TEST_CASE("single point reduces to a plain power") {
    for (double theta : {0.4, 1.0, 2.2})
        for (cplx u : {cplx(1, 0), cplx(2, 0.5)}) {
            const cplx want = std::exp(u * std::log(1.7));
            CHECK(std::abs(ho({1.7}, u, theta) - want) < 1e-7);
        }
}

TEST_CASE("moments of Uniform[1,2] at theta=1") {
    CHECK(ho({1, 2}, 1.0, 1.0).real() == doctest::Approx(1.5));
    CHECK(ho({1, 2}, 2.0, 1.0).real() == doctest::Approx(7.0 / 3.0));
}

TEST_CASE("residue oracle closed forms") {
    CHECK(ho_theta_one(std::vector<double>{1, 2}, 1.0).real() ==
          doctest::Approx(1.5));
    CHECK(ho_theta_one(std::vector<double>{1, 2, 4}, 1.0).real() ==
          doctest::Approx(7.0 / 3.0));
    CHECK_THROWS_AS(ho_theta_one(std::vector<double>{1, 1}, 1.0),
                    DegenerateSpectrum);
    CHECK_THROWS_AS(ho_theta_one(std::vector<double>{1, 2}, cplx(-1, 0)),
                    InvalidArgument);
}

TEST_CASE("quadrature matches the residue oracle") {
    const double tol = 1e-9;
    for (cplx u : {cplx(1, 0), cplx(2, 0), cplx(1.5, 0.5)})
        for (const auto& pts :
             {std::vector<double>{1, 2}, std::vector<double>{0.5, 1.3, 2.2},
              std::vector<double>{1, 2, 4, 8}}) {
            const cplx got = ho(pts, u, 1.0, tol);
            const cplx want = ho_theta_one(pts, u);
            CHECK(std::abs(got - want) <= 10 * tol * (1.0 + std::abs(want)));
        }
}

TEST_CASE("atoms below one validate the log-side cut placement") {
    // all atoms < 1 puts the whole cut on the negative axis
    const std::vector<double> pts{0.2, 0.5, 0.8};
    const cplx got = ho(pts, 1.5, 1.0);
    const cplx want = ho_theta_one(pts, 1.5);
    CHECK(std::abs(got - want) < 1e-8);
}

TEST_CASE("homogeneity in the atoms") {
    const std::vector<double> pts{0.7, 1.4, 2.1};
    const double tol = 1e-9;
    for (cplx u : {cplx(1, 0), cplx(1.5, 0.5)}) {
        const double lam = 2.3;
        std::vector<double> scaled;
        for (double a : pts) scaled.push_back(lam * a);
        const cplx want =
            std::exp(u * std::log(lam)) * ho(pts, u, 0.8, tol);
        CHECK(std::abs(ho(scaled, u, 0.8, tol) - want) <= 10 * tol *
              (1.0 + std::abs(want)));
    }
}

TEST_CASE("agrees with the Mellin transform path for c = N*theta") {
    const double tol = 1e-9;
    const std::vector<double> pts{1, 2, 3};
    const auto rho = DiscreteMeasure::uniform(pts);
    for (double c : {0.5, 2.0})
        for (cplx u : {cplx(1, 0), cplx(2, 0)}) {
            const cplx a = ho(pts, u, c / 3.0, tol);
            const cplx b = mellin_rho_c(rho, c, u, tol).value;
            CHECK(std::abs(a - b) <= 20 * tol);
        }
}

TEST_CASE("exponential reparametrization approaches the Bessel function") {
    // atoms e^{eps b} at argument v/eps converge to the Bessel value at (b, v)
    const std::vector<double> b{0.0, 0.5, 1.0};
    const double eps = 1e-3, v = 1.0, theta = 0.9;
    std::vector<double> atoms;
    for (double x : b) atoms.push_back(std::exp(eps * x));
    const cplx hov = ho(atoms, v / eps, theta, 1e-10);
    const cplx bes = bessel_rank_one({b, v, theta, 1e-10}).value;
    CHECK(std::abs(hov - bes) < 1e-2 * std::abs(bes));
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(ho({-1, 2}, 1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(ho({1, 2}, cplx(0, 1), 1.0), InvalidArgument);
    CHECK_THROWS_AS(ho({1, 2}, 1.0, -1.0), InvalidArgument);
}
