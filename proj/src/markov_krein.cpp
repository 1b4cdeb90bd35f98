#include "mkrein/markov_krein.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>

namespace mkrein {

MKReport mk_residual(const DiscreteMeasure& rho, double c,
                     const EmpiricalSample& mean_samples,
                     std::span<const cplx> z_grid) {
    if (!(c > 0.0)) throw InvalidArgument("c must be positive");
    if (mean_samples.values.empty())
        throw InvalidArgument("need at least one Monte Carlo sample");
    MKReport report;
    const double n = static_cast<double>(mean_samples.values.size());
    for (const cplx z : z_grid) {
        if (std::fabs(z.imag()) < 0.5)
            throw InvalidArgument("grid point too close to the real axis");
        cplx mean = 0.0;
        double sq = 0.0;
        for (double x : mean_samples.values) {
            const cplx term = std::exp(-c * std::log(z - x));
            mean += term;
            sq += std::norm(term);
        }
        mean /= n;
        const double var = std::max(sq / n - std::norm(mean), 0.0);
        const cplx rhs = std::exp(-c * g_function(rho, z));
        const double residual = std::abs(mean - rhs);
        report.z_grid.push_back(z);
        report.per_point.push_back(residual);
        report.tol_3sigma.push_back(3.0 * std::sqrt(var / n));
        report.max_residual = std::max(report.max_residual, residual);
    }
    return report;
}

namespace {

constexpr int kMomentCap = 24;

void check_order(int n_max) {
    if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
    if (n_max > kMomentCap)
        throw InvalidArgument("moment recursions are capped at order 24");
    if (n_max > 20)
        std::cerr << "warning: moment recursion above order 20 is "
                     "ill-conditioned in floating point\n";
}

// C(c+n-1, n) by the rising-factorial recurrence
std::vector<double> rising_binomials(double c, int n_max) {
    std::vector<double> b(static_cast<std::size_t>(n_max) + 1, 1.0);
    for (int n = 1; n <= n_max; ++n)
        b[static_cast<std::size_t>(n)] =
            b[static_cast<std::size_t>(n) - 1] * (c + n - 1) / n;
    return b;
}

} // namespace

MomentVector mk_moments(const MomentVector& m, double c, int n_max) {
    check_order(n_max);
    if (!(c > 0.0)) throw InvalidArgument("c must be positive");
    if (m.order < n_max)
        throw InvalidArgument("input moments shorter than requested order");
    // A_n = C(c+n-1,n) m'_n satisfies A = exp(P) with P = c Σ m_k w^k / k:
    // n A_n = Σ_{k=1..n} c m_k A_{n-k}
    std::vector<double> A(static_cast<std::size_t>(n_max) + 1, 0.0);
    A[0] = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        double s = 0.0;
        for (int k = 1; k <= n; ++k)
            s += c * m.values[static_cast<std::size_t>(k) - 1] *
                 A[static_cast<std::size_t>(n - k)];
        A[static_cast<std::size_t>(n)] = s / n;
    }
    const auto binom = rising_binomials(c, n_max);
    MomentVector out;
    out.order = n_max;
    out.values.resize(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n)
        out.values[static_cast<std::size_t>(n) - 1] =
            A[static_cast<std::size_t>(n)] / binom[static_cast<std::size_t>(n)];
    return out;
}

MomentVector mk_moments_inverse(const MomentVector& m_prime, double c,
                                int n_max) {
    check_order(n_max);
    if (!(c > 0.0)) throw InvalidArgument("c must be positive");
    if (m_prime.order < n_max)
        throw InvalidArgument("input moments shorter than requested order");
    const auto binom = rising_binomials(c, n_max);
    std::vector<double> A(static_cast<std::size_t>(n_max) + 1, 0.0);
    A[0] = 1.0;
    for (int n = 1; n <= n_max; ++n)
        A[static_cast<std::size_t>(n)] =
            binom[static_cast<std::size_t>(n)] *
            m_prime.values[static_cast<std::size_t>(n) - 1];
    // peel the logarithm: n A_n = Σ_k (k p_k) A_{n-k}, m_k = k p_k / c
    MomentVector out;
    out.order = n_max;
    out.values.resize(static_cast<std::size_t>(n_max));
    std::vector<double> kp(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) {
        double s = n * A[static_cast<std::size_t>(n)];
        for (int k = 1; k < n; ++k)
            s -= kp[static_cast<std::size_t>(k)] *
                 A[static_cast<std::size_t>(n - k)];
        kp[static_cast<std::size_t>(n)] = s;
        out.values[static_cast<std::size_t>(n) - 1] = s / c;
    }
    return out;
}

CCumulantVector c_cumulants(const MomentVector& m_prime) {
    check_order(m_prime.order);
    const int n = m_prime.order;
    CCumulantVector out;
    out.order = n;
    out.kappa_tilde.resize(static_cast<std::size_t>(n));
    out.kappa.resize(static_cast<std::size_t>(n));
    const auto moment = [&](int k) {
        return k == 0 ? 1.0 : m_prime.values[static_cast<std::size_t>(k) - 1];
    };
    double fact = 1.0; // (l-1)!
    for (int l = 1; l <= n; ++l) {
        double kt = moment(l);
        // C(l-1, j-1) built incrementally
        double ch = 1.0;
        for (int j = 1; j < l; ++j) {
            kt -= ch * out.kappa_tilde[static_cast<std::size_t>(j) - 1] *
                  moment(l - j);
            ch = ch * (l - 1 - (j - 1)) / j;
        }
        out.kappa_tilde[static_cast<std::size_t>(l) - 1] = kt;
        if (l > 1) fact *= (l - 1);
        out.kappa[static_cast<std::size_t>(l) - 1] = kt / fact;
    }
    return out;
}

MomentVector cumulants_to_moments(const CCumulantVector& k) {
    check_order(k.order);
    MomentVector out;
    out.order = k.order;
    out.values.resize(static_cast<std::size_t>(k.order));
    const auto moment = [&](int i) {
        return i == 0 ? 1.0 : out.values[static_cast<std::size_t>(i) - 1];
    };
    for (int l = 1; l <= k.order; ++l) {
        double m = 0.0;
        double ch = 1.0;
        for (int j = 1; j <= l; ++j) {
            m += ch * k.kappa_tilde[static_cast<std::size_t>(j) - 1] *
                 moment(l - j);
            ch = ch * (l - 1 - (j - 1)) / j;
        }
        out.values[static_cast<std::size_t>(l) - 1] = m;
    }
    return out;
}

ConjectureProbeResult conjecture_probe(const DiscreteMeasure& rho1,
                                       const DiscreteMeasure& rho2, double c,
                                       int n_max) {
    if (n_max % 2 != 0) throw InvalidArgument("n_max must be even");
    check_order(n_max);
    if (n_max > 16)
        std::cerr << "warning: conjecture probe above order 16 may be "
                     "dominated by inversion conditioning\n";

    const auto kappa_of = [&](const DiscreteMeasure& rho) {
        return c_cumulants(mk_moments(moments(rho, n_max), c, n_max));
    };
    CCumulantVector k1 = kappa_of(rho1);
    const CCumulantVector k2 = kappa_of(rho2);
    for (int l = 0; l < n_max; ++l) {
        k1.kappa[static_cast<std::size_t>(l)] +=
            k2.kappa[static_cast<std::size_t>(l)];
        k1.kappa_tilde[static_cast<std::size_t>(l)] +=
            k2.kappa_tilde[static_cast<std::size_t>(l)];
    }

    ConjectureProbeResult out;
    const MomentVector mu_c_moments = cumulants_to_moments(k1);
    out.mu_moments = mk_moments_inverse(mu_c_moments, c, n_max);
    out.hankel_min_eig = hankel_min_eigenvalue(out.mu_moments);
    return out;
}

} // namespace mkrein
