#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mkrein/contour.hpp"

namespace mkrein {

struct BesselQuery {
    std::vector<double> points; // a_1 <= ... <= a_N
    cplx u{};
    double theta = 1.0;
    double tol = 1e-8;
};

// Rank-one multivariate Bessel function
//   B(u; N, θ) = Γ(θN)/u^{θN-1} (1/2πi) ∮_{sgn(u)C} e^{uz} Π (z-a_j)^{-θ} dz
// evaluated in rotated coordinates (see contour.cpp) so the branch is
// well-defined in all four sgn(u) cases. For real points and real u the
// imaginary part is forced to zero when it falls below 10*tol.
QuadratureResult bessel_rank_one(const BesselQuery& q);

// θ = 1 closed form: the integrand has simple poles at the atoms, so
//   B = Γ(N) u^{1-N} Σ_j e^{u a_j} / Π_{k≠j}(a_j - a_k).
// Requires pairwise distinct atoms.
cplx bessel_theta_one(std::span<const double> points, cplx u);

} // namespace mkrein
