#include "mkrein/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "mkrein/errors.hpp"

namespace mkrein {

cplx log_gamma(cplx z) {
    static const double coef[9] = {
        0.99999999999980993,     676.5203681218851,   -1259.1392167224028,
        771.32342877765313,      -176.61502916214059, 12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6,
        1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // reflection; log(sin) stays finite for the moderate arguments we use
        const cplx pi = std::numbers::pi;
        return std::log(pi / std::sin(pi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    cplx sum = coef[0];
    for (int i = 1; i < 9; ++i) sum += coef[i] / (z + static_cast<double>(i));
    const cplx t = z + 7.5;
    return 0.91893853320467274178 + (z + 0.5) * std::log(t) - t +
           std::log(sum);
}

namespace {

// Lentz continued fraction for the incomplete beta (Numerical Recipes style).
double betacf(double a, double b, double x) {
    const double eps = 3e-16, fpmin = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

} // namespace

double beta_inc(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0))
        throw InvalidArgument("beta_inc requires positive parameters");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double ks_statistic(std::span<const double> sorted,
                    const std::function<double(double)>& cdf) {
    const std::size_t n = sorted.size();
    if (n == 0) throw InvalidArgument("ks_statistic needs a nonempty sample");
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(sorted[i]);
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    }
    return d;
}

namespace {

std::vector<double> ranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = 0.5 * (i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

} // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw InvalidArgument("spearman needs two equal-length samples");
    const auto rx = ranks(x), ry = ranks(y);
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0 || syy == 0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

} // namespace mkrein
