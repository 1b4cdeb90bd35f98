#include "mkrein/heckman_opdam.hpp"

#include <algorithm>
#include <cmath>

#include "mkrein/stats.hpp"

namespace mkrein {

QuadratureResult ho_rank_one(const HOQuery& q) {
    if (q.points.empty()) throw InvalidArgument("need at least one point");
    for (double a : q.points)
        if (!(a > 0.0)) throw InvalidArgument("atoms must be positive");
    if (!(q.u.real() > 0.0)) throw InvalidArgument("Re u must be positive");
    if (!(q.theta > 0.0)) throw InvalidArgument("theta must be positive");
    if (!(q.tol > 0.0)) throw InvalidArgument("tol must be positive");

    const std::size_t n = q.points.size();
    const double c = q.theta * static_cast<double>(n);
    const double log_amax =
        std::log(*std::max_element(q.points.begin(), q.points.end()));

    HankelContour contour;
    contour.stem_x = log_amax + 1.0;
    contour.half_height = 1.0;
    contour.rotation = 1.0;

    const Integrand f = [&](cplx z) {
        cplx expo = q.u * z;
        for (double a : q.points)
            expo -= q.theta * std::log(1.0 - a * std::exp(-z));
        return std::exp(expo);
    };

    const cplx prefactor = std::exp(std::lgamma(c) + log_gamma(q.u + 1.0) -
                                    log_gamma(q.u + c));
    const double scale = std::abs(prefactor);
    IntegrateOptions opts;
    opts.tol = std::max(q.tol / scale, 1e-15);
    const double rate = q.u.real() + c;
    opts.decay_rate = rate;
    contour.tail_length = choose_tail_length(f, contour, rate, opts.tol);

    QuadratureResult result = integrate(f, contour, opts);
    result.value *= prefactor;
    result.abs_error_estimate *= scale;
    result.truncation_bound *= scale;
    if (q.u.imag() == 0.0 &&
        std::fabs(result.value.imag()) <= 10.0 * q.tol)
        result.value = cplx(result.value.real(), 0.0);
    return result;
}

cplx ho_theta_one(std::span<const double> points, cplx u) {
    if (points.empty()) throw InvalidArgument("need at least one point");
    if (!(u.real() > 0.0)) throw InvalidArgument("Re u must be positive");
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(points[i] > 0.0))
            throw InvalidArgument("atoms must be positive");
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i] == points[j])
                throw DegenerateSpectrum(
                    "theta=1 residue sum needs distinct atoms");
    }

    cplx sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double denom = 1.0;
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) denom *= 1.0 - points[k] / points[j];
        sum += std::exp(u * std::log(points[j])) / denom;
    }
    const cplx pre =
        std::exp(std::lgamma(static_cast<double>(n)) + log_gamma(u + 1.0) -
                 log_gamma(u + static_cast<double>(n)));
    return pre * sum;
}

} // namespace mkrein
