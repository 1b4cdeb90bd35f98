#include "mkrein/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mkrein/parallel.hpp"
#include "mkrein/stats.hpp"

namespace mkrein {

std::vector<double> sample_dirichlet_weights(std::span<const double> alpha,
                                             PhiloxStream& rng) {
    if (alpha.empty()) throw InvalidArgument("alpha must be nonempty");
    for (double a : alpha)
        if (!(a > 0.0))
            throw InvalidArgument("Dirichlet parameters must be positive");
    std::vector<double> w(alpha.size());
    for (int attempt = 0; attempt < 100; ++attempt) {
        double total = 0.0;
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            w[j] = rng.next_gamma(alpha[j]);
            total += w[j];
        }
        if (total > 0.0) {
            for (double& x : w) x /= total;
            return w;
        }
        // all variates underflowed (extremely small shapes); redraw
    }
    throw NonConvergence("Dirichlet sampling underflowed repeatedly");
}

EmpiricalSample random_mean_samples(const DPConfig& cfg, int threads) {
    if (!(cfg.concentration > 0.0))
        throw InvalidArgument("concentration must be positive");
    if (cfg.n_samples < 1) throw InvalidArgument("n_samples must be >= 1");
    if (cfg.shards < 1) throw InvalidArgument("shards must be >= 1");

    const auto& atoms = cfg.base.atoms();
    std::vector<double> alpha(cfg.base.weights());
    for (double& a : alpha) a *= cfg.concentration;

    EmpiricalSample out;
    out.values.assign(static_cast<std::size_t>(cfg.n_samples), 0.0);
    out.seed_used = cfg.seed;
    out.shards_used = cfg.shards;

    parallel_for(cfg.n_samples, threads, [&](long i) {
        PhiloxStream rng(cfg.seed, static_cast<std::uint64_t>(i));
        if (atoms.size() == 1) {
            out.values[static_cast<std::size_t>(i)] = atoms[0];
            return;
        }
        const auto sigma = sample_dirichlet_weights(alpha, rng);
        double mean = 0.0;
        for (std::size_t j = 0; j < atoms.size(); ++j)
            mean += atoms[j] * sigma[j];
        out.values[static_cast<std::size_t>(i)] = mean;
    });
    return out;
}

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

QuadratureResult fourier_hankel(const DiscreteMeasure& rho, double c, cplx u,
                                double tol) {
    const cplx r = sgn_rotation(u);
    const cplx v = u * r;

    double max_re = -1e300, max_im = 0.0;
    for (double a : rho.atoms()) {
        const cplx xi = a / r;
        max_re = std::max(max_re, xi.real());
        max_im = std::max(max_im, std::fabs(xi.imag()));
    }
    HankelContour contour;
    contour.stem_x = max_re + 1.0;
    contour.half_height = max_im + 1.0;
    contour.rotation = r;

    const bool unrotated = (r == cplx(1.0, 0.0));
    const Integrand f = [&, unrotated](cplx z) {
        if (unrotated) return std::exp(u * z - c * g_function(rho, z));
        const cplx zeta = z / r;
        cplx expo = v * zeta;
        for (std::size_t j = 0; j < rho.size(); ++j)
            expo -= c * rho.weights()[j] * std::log(zeta - rho.atoms()[j] / r);
        return std::exp(expo);
    };

    const cplx prefactor =
        std::exp(std::lgamma(c) + (1.0 - c) * std::log(v)) / r;
    const double scale = std::abs(prefactor);
    IntegrateOptions opts;
    opts.tol = std::max(tol / scale, 1e-15);
    opts.decay_rate = v.real();
    contour.tail_length = choose_tail_length(f, contour, v.real(), opts.tol);

    QuadratureResult result = integrate(f, contour, opts);
    result.value *= prefactor;
    result.abs_error_estimate *= scale;
    result.truncation_bound *= scale;
    return result;
}

QuadratureResult fourier_line(const DiscreteMeasure& rho, double c, cplx u,
                              double tol, double delta) {
    if (u.real() != 0.0)
        throw InvalidArgument("line contour requires Re u = 0");
    if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
    const cplx r = sgn_rotation(u);
    const double v = (u * r).real(); // |Im u|, real and positive

    // work in zeta = z/r: the vertical line Re = delta, far tails bent to
    // 135 degrees where e^{v zeta} decays; all branch cuts run leftward from
    // the rotated atoms, so the path stays in the cut plane
    double s_hi = 0.0, s_lo = 0.0;
    for (double a : rho.atoms()) {
        const cplx xi = a / r;
        s_hi = std::max(s_hi, xi.imag());
        s_lo = std::max(s_lo, -xi.imag());
    }
    s_hi += 1.0;
    s_lo += 1.0;

    const Integrand f = [&](cplx zeta) {
        cplx expo = v * zeta;
        for (std::size_t j = 0; j < rho.size(); ++j)
            expo -= c * rho.weights()[j] * std::log(zeta - rho.atoms()[j] / r);
        return std::exp(expo);
    };

    const double rate = v / std::numbers::sqrt2;
    double T = (std::log(10.0 / tol) + 2.0) / rate + 2.0;
    const cplx bend_lo(delta, -s_lo), bend_hi(delta, s_hi);
    const cplx dir_lo = std::polar(1.0, -0.75 * std::numbers::pi);
    const cplx dir_hi = std::polar(1.0, 0.75 * std::numbers::pi);
    for (int i = 0; i < 200; ++i) {
        const double endmag = std::abs(f(bend_lo + T * dir_lo)) +
                              std::abs(f(bend_hi + T * dir_hi));
        if (endmag / (rate * two_pi) <= tol / 10.0 || T > 1e9) break;
        T *= 1.5;
    }

    const std::vector<cplx> path{bend_lo + T * dir_lo, bend_lo, bend_hi,
                                 bend_hi + T * dir_hi};
    const cplx prefactor =
        std::exp(std::lgamma(c) + (1.0 - c) * std::log(cplx(v)));
    const double scale = std::abs(prefactor);
    IntegrateOptions opts;
    opts.tol = std::max(tol / scale, 1e-15);
    QuadratureResult result = integrate_polyline(f, path, opts);
    result.truncation_bound = 2.0 *
                              (std::abs(f(path.front())) +
                               std::abs(f(path.back()))) /
                              (rate * two_pi);
    result.abs_error_estimate += result.truncation_bound;
    result.value *= prefactor;
    result.abs_error_estimate *= scale;
    result.truncation_bound *= scale;
    return result;
}

} // namespace

QuadratureResult fourier_rho_c(const DiscreteMeasure& rho, double c, cplx u,
                               double tol, ContourKind kind, double delta) {
    if (!(c > 0.0)) throw InvalidArgument("c must be positive");
    if (u == cplx(0.0, 0.0)) throw InvalidArgument("u must be nonzero");
    if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");

    QuadratureResult result = (kind == ContourKind::line)
                                  ? fourier_line(rho, c, u, tol, delta)
                                  : fourier_hankel(rho, c, u, tol);
    if (u.imag() == 0.0 && std::fabs(result.value.imag()) <= 10.0 * tol)
        result.value = cplx(result.value.real(), 0.0);
    return result;
}

QuadratureResult mellin_rho_c(const DiscreteMeasure& rho, double c, cplx u,
                              double tol) {
    if (!(c > 0.0)) throw InvalidArgument("c must be positive");
    if (!(u.real() > 0.0)) throw InvalidArgument("Re u must be positive");
    if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
    if (!(rho.min_atom() > 0.0))
        throw InvalidArgument("Mellin transform needs positive atoms");

    HankelContour contour;
    contour.stem_x = std::log(rho.max_atom()) + 1.0;
    contour.half_height = 1.0;
    contour.rotation = 1.0;

    const Integrand f = [&](cplx z) {
        cplx expo = u * z;
        for (std::size_t j = 0; j < rho.size(); ++j)
            expo -= c * rho.weights()[j] *
                    std::log(1.0 - rho.atoms()[j] * std::exp(-z));
        return std::exp(expo);
    };

    const cplx prefactor =
        std::exp(std::lgamma(c) + log_gamma(u + 1.0) - log_gamma(u + c));
    const double scale = std::abs(prefactor);
    IntegrateOptions opts;
    opts.tol = std::max(tol / scale, 1e-15);
    const double rate = u.real() + c;
    opts.decay_rate = rate;
    contour.tail_length = choose_tail_length(f, contour, rate, opts.tol);

    QuadratureResult result = integrate(f, contour, opts);
    result.value *= prefactor;
    result.abs_error_estimate *= scale;
    result.truncation_bound *= scale;
    if (u.imag() == 0.0 && std::fabs(result.value.imag()) <= 10.0 * tol)
        result.value = cplx(result.value.real(), 0.0);
    return result;
}

} // namespace mkrein
