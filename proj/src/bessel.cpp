#include "mkrein/bessel.hpp"

#include <algorithm>
#include <cmath>

#include "mkrein/stats.hpp"

namespace mkrein {

QuadratureResult bessel_rank_one(const BesselQuery& q) {
    if (q.points.empty()) throw InvalidArgument("need at least one point");
    if (q.u == cplx(0.0, 0.0)) throw InvalidArgument("u must be nonzero");
    if (!(q.theta > 0.0)) throw InvalidArgument("theta must be positive");
    if (!(q.tol > 0.0)) throw InvalidArgument("tol must be positive");

    const std::size_t n = q.points.size();
    const double c = q.theta * static_cast<double>(n);
    const cplx r = sgn_rotation(q.u);
    const cplx v = q.u * r; // Re v > 0

    // rotated atom positions xi_j = a_j / r fix the contour box
    double max_re = -1e300, max_im = 0.0;
    for (double a : q.points) {
        const cplx xi = a / r;
        max_re = std::max(max_re, xi.real());
        max_im = std::max(max_im, std::fabs(xi.imag()));
    }
    HankelContour contour;
    contour.stem_x = max_re + 1.0;
    contour.half_height = max_im + 1.0;
    contour.rotation = r;

    const Integrand f = [&](cplx z) {
        const cplx zeta = z / r;
        cplx expo = v * zeta;
        for (double a : q.points) expo -= q.theta * std::log(zeta - a / r);
        return std::exp(expo);
    };

    const cplx prefactor =
        std::exp(std::lgamma(c) + (1.0 - c) * std::log(v)) / r;
    const double scale = std::abs(prefactor);
    IntegrateOptions opts;
    opts.tol = std::max(q.tol / scale, 1e-15);
    opts.decay_rate = v.real();
    contour.tail_length =
        choose_tail_length(f, contour, v.real(), opts.tol);

    QuadratureResult result = integrate(f, contour, opts);
    result.value *= prefactor;
    result.abs_error_estimate *= scale;
    result.truncation_bound *= scale;
    if (q.u.imag() == 0.0 &&
        std::fabs(result.value.imag()) <= 10.0 * q.tol)
        result.value = cplx(result.value.real(), 0.0);
    return result;
}

cplx bessel_theta_one(std::span<const double> points, cplx u) {
    if (points.empty()) throw InvalidArgument("need at least one point");
    if (u == cplx(0.0, 0.0)) throw InvalidArgument("u must be nonzero");
    const std::size_t n = points.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i] == points[j])
                throw DegenerateSpectrum(
                    "theta=1 residue sum needs distinct atoms");

    cplx sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double denom = 1.0;
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) denom *= points[j] - points[k];
        sum += std::exp(u * points[j]) / denom;
    }
    cplx u_pow = 1.0; // u^{N-1}, exact integer power
    for (std::size_t k = 0; k + 1 < n; ++k) u_pow *= u;
    return std::exp(std::lgamma(static_cast<double>(n))) * sum / u_pow;
}

} // namespace mkrein
