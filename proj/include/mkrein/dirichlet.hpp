#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mkrein/contour.hpp"
#include "mkrein/measure.hpp"
#include "mkrein/rng.hpp"

namespace mkrein {

struct DPConfig {
    DiscreteMeasure base;     // the parameter measure is concentration*base
    double concentration = 1.0;
    long n_samples = 1;
    std::uint64_t seed = 42;
    int shards = 1;
};

struct EmpiricalSample {
    std::vector<double> values;
    std::uint64_t seed_used = 0;
    int shards_used = 1;
};

// One Dirichlet draw via normalized Gamma variates; E[sigma_j] = alpha_j/sum.
std::vector<double> sample_dirichlet_weights(std::span<const double> alpha,
                                             PhiloxStream& rng);

// Monte Carlo samples of the random mean of the Dirichlet process with
// parameter c*rho. Sample i is bound to counter substream (seed, i), so the
// value set depends on the seed alone; shards only partition the work.
EmpiricalSample random_mean_samples(const DPConfig& cfg, int threads = 1);

enum class ContourKind { hankel, line };

// Fourier-side transform of the random-mean law rho^(c):
//   ∫ e^{ux} rho^(c)(dx)
//     = Γ(c)/u^{c-1} (1/2πi) ∮_{sgn(u)C} exp(uz - c g_rho(z)) dz.
// ContourKind::line uses the deformed line Re ζ = delta (valid for purely
// imaginary u) with its far tails bent to ±135° where e^{uz} decays; the
// bends sit beyond every branch point, so the value is the line-contour one.
QuadratureResult fourier_rho_c(const DiscreteMeasure& rho, double c, cplx u,
                               double tol,
                               ContourKind kind = ContourKind::hankel,
                               double delta = 1.0);

// Mellin-side transform ∫ x^u rho^(c)(dx) for positive atoms and Re u > 0:
//   Γ(c)Γ(u+1)/Γ(u+c) (1/2πi) ∮ exp(uz - c ∫ log(1-s e^{-z}) rho(ds)) dz.
QuadratureResult mellin_rho_c(const DiscreteMeasure& rho, double c, cplx u,
                              double tol);

} // namespace mkrein
