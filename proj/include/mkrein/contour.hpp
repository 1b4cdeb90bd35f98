#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "mkrein/errors.hpp"

namespace mkrein {

using cplx = std::complex<double>;
using Integrand = std::function<cplx(cplx)>;

// Four-way rotation selecting the decay direction of e^{uz}:
// 1 for Re u > 0, -1 for Re u < 0, -i for u on the positive imaginary
// axis, +i on the negative imaginary axis.
cplx sgn_rotation(cplx u);

// Piecewise-linear Hankel loop: horizontal ray at -half_height from
// -tail_length to stem_x, vertical stem up to +half_height, horizontal ray
// back to -tail_length. Counter-clockwise around the enclosed cut; the whole
// loop is multiplied by `rotation`.
struct HankelContour {
    double stem_x = 1.0;
    double half_height = 1.0;
    double tail_length = 30.0;
    cplx rotation = 1.0;

    std::vector<cplx> vertices() const;
};

// stem_x = max(|cut_end|+1, 1), half_height = stem_x,
// rotation = sgn_rotation(u). The +1 margin keeps the nearest branch point
// at distance >= 1 from the contour.
HankelContour build_contour(double cut_end, cplx u, double tail_length);

struct QuadratureResult {
    cplx value{};                    // approximates (1/2πi) ∮ f dz
    double abs_error_estimate = 0.0; // quadrature + truncation estimate
    long n_evals = 0;
    double truncation_bound = 0.0;   // estimated discarded tail mass
};

struct IntegrateOptions {
    double tol = 1e-8;
    // exponential decay rate of |f| along the outgoing rays; used for the
    // reported truncation bound. 0 disables the bound.
    double decay_rate = 0.0;
    // cap on the initial panel length (0 = automatic)
    double max_panel = 0.0;
    long max_evals = 4'000'000;
};

// Adaptive Gauss-Kronrod 7-15 along an oriented polyline; returns
// (1/2πi) * the line integral. Panels are refined worst-first and summed in
// contour order, so results are bit-stable for a given tolerance.
QuadratureResult integrate_polyline(const Integrand& f,
                                    const std::vector<cplx>& vertices,
                                    const IntegrateOptions& opts);

QuadratureResult integrate(const Integrand& f, const HankelContour& contour,
                           double tol);
QuadratureResult integrate(const Integrand& f, const HankelContour& contour,
                           const IntegrateOptions& opts);

// Grows L until |f| at the ray ends contributes less than tol/10 to the
// loop integral, assuming decay at least `rate` further out.
double choose_tail_length(const Integrand& f, const HankelContour& contour,
                          double rate, double tol);

// Right side of the reciprocal-Gamma identity
//   e^{ux} = u Γ(c) (1/2πi) ∮ e^{uz} (u(z-x))^{-c} dz
// over build_contour(x, u). The power is evaluated in rotated coordinates
// ζ = z/sgn(u), where each principal factor is continuous along the loop;
// see the notes in contour.cpp. Contract: result == e^{ux} within ~tol.
cplx gamma_identity_check(double c, cplx u, double x, double tol);

// Right side of the Beta-function identity
//   x^u = Γ(c)Γ(u+1)/Γ(u+c) (1/2πi) ∮ e^{uz} (1 - x e^{-z})^{-c} dz
// over a Hankel loop enclosing (-∞, log x]. Requires Re u > 0, x > 0.
// Contract: result == x^u within ~tol.
cplx beta_identity_check(double c, cplx u, double x, double tol);

} // namespace mkrein
