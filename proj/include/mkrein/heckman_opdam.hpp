#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mkrein/contour.hpp"

namespace mkrein {

struct HOQuery {
    std::vector<double> points; // 0 < a_1 <= ... <= a_N
    cplx u{};                   // Re u > 0
    double theta = 1.0;
    double tol = 1e-8;
};

// Rank-one Heckman-Opdam hypergeometric function
//   F(u; N, θ) = Γ(θN)Γ(u+1)/Γ(u+θN) (1/2πi) ∮ e^{uz} Π (1-a_j e^{-z})^{-θ} dz
// over a Hankel loop enclosing (-∞, log a_N]. The integrand repeats its
// branch cuts at heights 2πk, so the loop stays within |Im z| = 1.
QuadratureResult ho_rank_one(const HOQuery& q);

// θ = 1 closed form: simple poles at z = log a_j give
//   F = Γ(N)Γ(u+1)/Γ(u+N) Σ_j a_j^u Π_{k≠j}(1 - a_k/a_j)^{-1}.
cplx ho_theta_one(std::span<const double> points, cplx u);

} // namespace mkrein
