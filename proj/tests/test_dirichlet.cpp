#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mkrein/dirichlet.hpp"
#include "mkrein/stats.hpp"

using namespace mkrein;

TEST_CASE("Dirichlet weights: marginal moments and degenerate case") {
    PhiloxStream rng(1, 0);
    const std::vector<double> alpha{1.0, 1.0};
    const long n = 100000;
    double sum = 0.0, sq = 0.0;
    for (long i = 0; i < n; ++i) {
        const auto w = sample_dirichlet_weights(alpha, rng);
        CHECK(w[0] >= 0.0);
        CHECK(w[0] + w[1] == doctest::Approx(1.0));
        sum += w[0];
        sq += w[0] * w[0];
    }
    const double mean = sum / n;
    const double sd = std::sqrt((sq / n - mean * mean) / n);
    CHECK(std::fabs(mean - 0.5) < 3.0 * sd);

    PhiloxStream rng2(2, 0);
    const auto single =
        sample_dirichlet_weights(std::vector<double>{5.0}, rng2);
    CHECK(single[0] == doctest::Approx(1.0));

    CHECK_THROWS_AS(
        sample_dirichlet_weights(std::vector<double>{1.0, 0.0}, rng2),
        InvalidArgument);
}

TEST_CASE("Dirichlet(1,1) first weight is uniform (KS at 1%)") {
    PhiloxStream rng(3, 0);
    const std::vector<double> alpha{1.0, 1.0};
    std::vector<double> w0;
    const long n = 100000;
    for (long i = 0; i < n; ++i)
        w0.push_back(sample_dirichlet_weights(alpha, rng)[0]);
    std::sort(w0.begin(), w0.end());
    const double d =
        ks_statistic(w0, [](double x) { return std::clamp(x, 0.0, 1.0); });
    CHECK(d < 1.63 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("random means of a point mass collapse") {
    const DPConfig cfg{make_measure({2.5}), 3.0, 500, 7, 1};
    for (double v : random_mean_samples(cfg).values)
        CHECK(v == doctest::Approx(2.5));
}

TEST_CASE("two-point base at c=2 gives Uniform[0,1] means") {
    const DPConfig cfg{make_measure({0.0, 1.0}), 2.0, 200000, 42, 1};
    auto sample = random_mean_samples(cfg, 4);
    std::sort(sample.values.begin(), sample.values.end());
    const double d = ks_statistic(
        sample.values, [](double x) { return std::clamp(x, 0.0, 1.0); });
    CHECK(d < 1.63 / std::sqrt(static_cast<double>(cfg.n_samples)));
}

TEST_CASE("two-point base at c=1/2: symmetric Beta mean") {
    const DPConfig cfg{make_measure({0.0, 1.0}), 0.5, 200000, 9, 1};
    const auto sample = random_mean_samples(cfg, 4);
    double sum = 0.0, sq = 0.0;
    for (double v : sample.values) {
        sum += v;
        sq += v * v;
    }
    const double n = static_cast<double>(sample.values.size());
    const double mean = sum / n;
    const double sd = std::sqrt((sq / n - mean * mean) / n);
    CHECK(std::fabs(mean - 0.5) < 3.0 * sd);
}

TEST_CASE("samples stay in the convex hull of the atoms") {
    const auto base = make_measure({-2.0, -0.5, 0.1, 1.4, 3.0});
    const DPConfig cfg{base, 1.3, 50000, 11, 1};
    const double lo = base.min_atom(), hi = base.max_atom();
    const double slack = 1e-12 * (hi - lo);
    for (double v : random_mean_samples(cfg, 4).values) {
        CHECK(v >= lo - slack);
        CHECK(v <= hi + slack);
    }
}

TEST_CASE("sampling determinism and shard invariance") {
    const auto base = make_measure({0.0, 0.3, 1.0});
    DPConfig cfg{base, 1.7, 5000, 42, 1};
    const auto a = random_mean_samples(cfg, 1);
    const auto b = random_mean_samples(cfg, 4); // thread count is irrelevant
    CHECK(a.values == b.values);

    cfg.shards = 3;
    auto c = random_mean_samples(cfg, 2);
    auto av = a.values, cv = c.values;
    std::sort(av.begin(), av.end());
    std::sort(cv.begin(), cv.end());
    CHECK(av == cv); // multiset unchanged by the shard count

    cfg.seed = 43;
    const auto d = random_mean_samples(cfg);
    CHECK(d.values != a.values);
}

TEST_CASE("Fourier transform closed forms") {
    const auto da = make_measure({0.7});
    for (cplx u : {cplx(1, 0), cplx(0, 2), cplx(-1, 1)})
        CHECK(std::abs(fourier_rho_c(da, 1.3, u, 1e-9).value -
                       std::exp(0.7 * u)) < 1e-7);

    const auto half = make_measure({0.0, 1.0});
    CHECK(fourier_rho_c(half, 2.0, 1.0, 1e-9).value.real() ==
          doctest::Approx(std::exp(1.0) - 1.0));
}

TEST_CASE("Fourier transform at c=1 sits inside the Monte Carlo band") {
    const auto half = make_measure({0.0, 1.0});
    const cplx quad = fourier_rho_c(half, 1.0, 1.0, 1e-9).value;
    const DPConfig cfg{half, 1.0, 200000, 2024, 1};
    const auto sample = random_mean_samples(cfg, 4);
    double sum = 0.0, sq = 0.0;
    for (double x : sample.values) {
        const double e = std::exp(x);
        sum += e;
        sq += e * e;
    }
    const double n = static_cast<double>(sample.values.size());
    const double mean = sum / n;
    const double sd = std::sqrt((sq / n - mean * mean) / n);
    CHECK(std::fabs(quad.real() - mean) < 3.0 * sd + 1e-9);
}

TEST_CASE("empirical characteristic function matches the contour values") {
    const auto base = make_measure({-0.6, 0.2, 1.1});
    const double c = 1.4;
    const DPConfig cfg{base, c, 150000, 5, 1};
    const auto sample = random_mean_samples(cfg, 4);
    for (double t : {0.5, 1.0, 2.0}) {
        cplx emp = 0.0;
        double sq = 0.0;
        for (double x : sample.values) {
            const cplx e = std::exp(cplx(0, t * x));
            emp += e;
            sq += std::norm(e);
        }
        const double n = static_cast<double>(sample.values.size());
        emp /= n;
        const double sd = std::sqrt(std::max(sq / n - std::norm(emp), 0.0) / n);
        const cplx quad = fourier_rho_c(base, c, cplx(0, t), 1e-9).value;
        CHECK(std::abs(emp - quad) < 3.0 * sd + 1e-8);
    }
}

TEST_CASE("Mellin transform closed forms") {
    const auto da = make_measure({1.6});
    for (cplx u : {cplx(1, 0), cplx(2.5, 0.5)})
        CHECK(std::abs(mellin_rho_c(da, 0.8, u, 1e-9).value -
                       std::exp(u * std::log(1.6))) < 1e-7);

    const auto one_two = make_measure({1.0, 2.0});
    CHECK(mellin_rho_c(one_two, 2.0, 1.0, 1e-9).value.real() ==
          doctest::Approx(1.5));
    CHECK(mellin_rho_c(one_two, 2.0, 2.0, 1e-9).value.real() ==
          doctest::Approx(7.0 / 3.0));
    CHECK_THROWS_AS(mellin_rho_c(make_measure({-1.0, 2.0}), 1.0, 1.0, 1e-8),
                    InvalidArgument);
    CHECK_THROWS_AS(mellin_rho_c(one_two, 1.0, cplx(0, 1), 1e-8),
                    InvalidArgument);
}

TEST_CASE("absolute-moment comparison between base and random means") {
    // E_{rho^(c)} |X|^alpha <= E_rho |X|^alpha + 3 sigma, alpha = 1,2,3
    PhiloxStream gen(77, 0);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<double> atoms;
        for (int i = 0; i < 4; ++i)
            atoms.push_back(4.0 * (gen.next_double() - 0.5));
        const auto base = make_measure(atoms);
        const double c = 0.3 + 2.0 * gen.next_double();
        const DPConfig cfg{base, c, 40000,
                           static_cast<std::uint64_t>(100 + rep), 1};
        const auto sample = random_mean_samples(cfg, 4);
        for (double alpha : {1.0, 2.0, 3.0}) {
            double rhs = 0.0;
            for (std::size_t j = 0; j < base.size(); ++j)
                rhs += base.weights()[j] *
                       std::pow(std::fabs(base.atoms()[j]), alpha);
            double sum = 0.0, sq = 0.0;
            for (double x : sample.values) {
                const double p = std::pow(std::fabs(x), alpha);
                sum += p;
                sq += p * p;
            }
            const double n = static_cast<double>(sample.values.size());
            const double mean = sum / n;
            const double sd = std::sqrt((sq / n - mean * mean) / n);
            CHECK(mean <= rhs + 3.0 * sd);
        }
    }
}

TEST_CASE("weak continuity of the random-mean law") {
    // bases converging to (d_0 + d_1)/2; KS distance of the mean samples
    // against the limit decreases up to Monte Carlo noise
    const auto limit = make_measure({0.0, 1.0});
    const long n = 60000;
    const auto limit_sample =
        random_mean_samples({limit, 2.0, n, 314, 1}, 4);
    auto ref = limit_sample.values;
    std::sort(ref.begin(), ref.end());
    const auto ks_against_ref = [&](const std::vector<double>& v) {
        auto s = v;
        std::sort(s.begin(), s.end());
        const auto cdf = [&](double x) {
            return static_cast<double>(
                       std::lower_bound(ref.begin(), ref.end(), x) -
                       ref.begin()) /
                   static_cast<double>(ref.size());
        };
        return ks_statistic(s, cdf);
    };
    std::vector<double> ks;
    for (double shift : {0.5, 0.25, 0.05}) {
        const auto rho_k = make_measure({0.0, 1.0 + shift});
        ks.push_back(ks_against_ref(
            random_mean_samples({rho_k, 2.0, n, 314, 1}, 4).values));
    }
    const double noise = 3.0 * 1.63 / std::sqrt(static_cast<double>(n));
    CHECK(ks[2] < ks[0] + noise);
    CHECK(ks[1] < ks[0] + noise);
    CHECK(ks[2] < 2.0 * noise + 0.05);
}

TEST_CASE("line contour cross-validates the Hankel loop") {
    const auto base = make_measure({-0.4, 0.3, 1.2});
    for (double c : {0.6, 1.0, 2.5})
        for (double t : {1.0, -2.0}) {
            const cplx u(0, t);
            const cplx hankel = fourier_rho_c(base, c, u, 1e-10).value;
            const cplx line =
                fourier_rho_c(base, c, u, 1e-10, ContourKind::line).value;
            CHECK(std::abs(hankel - line) < 1e-8);
        }
    // delta is a free parameter of the deformation
    const cplx l1 = fourier_rho_c(base, 2.0, cplx(0, 1), 1e-10,
                                  ContourKind::line, 0.5)
                        .value;
    const cplx l2 = fourier_rho_c(base, 2.0, cplx(0, 1), 1e-10,
                                  ContourKind::line, 2.0)
                        .value;
    CHECK(std::abs(l1 - l2) < 1e-8);
    CHECK_THROWS_AS(
        fourier_rho_c(base, 2.0, cplx(1, 1), 1e-8, ContourKind::line),
        InvalidArgument);
}

TEST_CASE("configuration validation") {
    const auto base = make_measure({0.0, 1.0});
    CHECK_THROWS_AS(random_mean_samples({base, -1.0, 10, 1, 1}),
                    InvalidArgument);
    CHECK_THROWS_AS(random_mean_samples({base, 1.0, 0, 1, 1}),
                    InvalidArgument);
    CHECK_THROWS_AS(random_mean_samples({base, 1.0, 10, 1, 0}),
                    InvalidArgument);
    CHECK_THROWS_AS(fourier_rho_c(base, 0.0, 1.0, 1e-8), InvalidArgument);
    CHECK_THROWS_AS(fourier_rho_c(base, 1.0, cplx(0, 0), 1e-8),
                    InvalidArgument);
}
