#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mkrein/dirichlet.hpp"
#include "mkrein/measure.hpp"

namespace mkrein {

struct MKReport {
    std::vector<cplx> z_grid;
    std::vector<double> per_point;   // |MC left side - exp(-c g_rho)| per z
    std::vector<double> tol_3sigma;  // statistical tolerance per z
    double max_residual = 0.0;
};

// Pointwise check of ∫ (z-x)^{-c} rho^(c)(dx) = exp(-c g_rho(z)) with the
// left side estimated from Monte Carlo random-mean samples. Grid points must
// keep |Im z| >= 0.5 away from the real axis.
MKReport mk_residual(const DiscreteMeasure& rho, double c,
                     const EmpiricalSample& mean_samples,
                     std::span<const cplx> z_grid);

// Moments of rho^(c) from moments of rho: matching coefficients of z^{-n} in
//   Σ_n C(c+n-1, n) m'_n z^{-n} = exp(c Σ_k m_k z^{-k} / k).
// Exact rational recursion evaluated in doubles; warns above order 20,
// capped at 24.
MomentVector mk_moments(const MomentVector& m, double c, int n_max);

// Inverse direction: moments of rho from moments of rho^(c).
MomentVector mk_moments_inverse(const MomentVector& m_prime, double c,
                                int n_max);

struct CCumulantVector {
    int order = 0;
    std::vector<double> kappa;        // kappa_l = kappa~_l / (l-1)!
    std::vector<double> kappa_tilde;  // classical cumulants of rho^(c)
};

CCumulantVector c_cumulants(const MomentVector& m_prime);
MomentVector cumulants_to_moments(const CCumulantVector& k);

struct ConjectureProbeResult {
    MomentVector mu_moments;
    double hankel_min_eig = 0.0;
};

// Falsification probe for closure of the high-temperature additive
// convolution: adds the kappa-vectors of rho1 and rho2, inverts back to the
// moments of the putative measure mu and reports the minimum Hankel
// eigenvalue. Nonnegative output is consistent with closure; a clearly
// negative eigenvalue would be a counterexample candidate, never a proof
// either way.
ConjectureProbeResult conjecture_probe(const DiscreteMeasure& rho1,
                                       const DiscreteMeasure& rho2, double c,
                                       int n_max);

} // namespace mkrein
