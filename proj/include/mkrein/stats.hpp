#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace mkrein {

using cplx = std::complex<double>;

// log Gamma(z) on the principal branch, Lanczos (g=7, 9 terms), valid away
// from the poles 0, -1, -2, ...
cplx log_gamma(cplx z);

// Regularized incomplete beta function I_x(a,b).
double beta_inc(double a, double b, double x);

// Two-sided Kolmogorov-Smirnov statistic of a sample against a CDF.
// `sorted` must be ascending.
double ks_statistic(std::span<const double> sorted,
                    const std::function<double(double)>& cdf);

// Spearman rank correlation of y against x (ties averaged).
double spearman(std::span<const double> x, std::span<const double> y);

} // namespace mkrein
