#include "mkrein/limits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include "mkrein/bessel.hpp"
#include "mkrein/dirichlet.hpp"
#include "mkrein/heckman_opdam.hpp"
#include "mkrein/parallel.hpp"
#include "mkrein/stats.hpp"

namespace mkrein {

double RegimeSchedule::beta_of(int N) const {
    if (N < 1) throw InvalidArgument("N must be >= 1");
    switch (regime) {
        case Regime::classical:
            return 1.0 / (static_cast<double>(N) * N);
        case Regime::high_temperature:
            return 2.0 * c_target / N;
        case Regime::free_regime:
            throw InvalidArgument(
                "no limit formula is implemented for the free regime");
    }
    throw InvalidArgument("unknown regime");
}

TargetDist TargetDist::uniform(double a, double b) {
    if (!(a < b)) throw InvalidArgument("uniform needs a < b");
    TargetDist t;
    t.kind_ = Kind::uniform;
    t.p1_ = a;
    t.p2_ = b;
    return t;
}

TargetDist TargetDist::semicircle(double radius) {
    if (!(radius > 0.0)) throw InvalidArgument("semicircle needs radius > 0");
    TargetDist t;
    t.kind_ = Kind::semicircle;
    t.p1_ = radius;
    return t;
}

TargetDist TargetDist::two_point(double p, double x0, double x1) {
    if (!(p > 0.0 && p < 1.0))
        throw InvalidArgument("two_point needs p in (0,1)");
    if (!(x0 < x1)) throw InvalidArgument("two_point needs x0 < x1");
    TargetDist t;
    t.kind_ = Kind::two_point;
    t.p1_ = p;
    t.p3_ = x0;
    t.p4_ = x1;
    return t;
}

TargetDist TargetDist::beta(double alpha, double beta) {
    if (!(alpha > 0.0 && beta > 0.0))
        throw InvalidArgument("beta needs positive parameters");
    TargetDist t;
    t.kind_ = Kind::beta;
    t.p1_ = alpha;
    t.p2_ = beta;
    return t;
}

TargetDist TargetDist::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::istringstream rest(text.substr(colon + 1));
        std::string field;
        while (std::getline(rest, field, ','))
            if (!field.empty()) args.push_back(std::stod(field));
    }
    const auto arg = [&](std::size_t i, double fallback) {
        return i < args.size() ? args[i] : fallback;
    };
    if (name == "uniform") return uniform(arg(0, 0.0), arg(1, 1.0));
    if (name == "semicircle") return semicircle(arg(0, 1.0));
    if (name == "two_point" || name == "two-point")
        return two_point(arg(0, 0.5), arg(1, 0.0), arg(2, 1.0));
    if (name == "beta") return beta(arg(0, 1.0), arg(1, 1.0));
    throw InvalidArgument("unsupported target distribution: " + name);
}

namespace {

double bisect_quantile(double p, double lo, double hi,
                       const std::function<double(double)>& cdf) {
    for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + std::fabs(lo)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double TargetDist::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0))
        throw InvalidArgument("quantile argument must lie in (0,1)");
    switch (kind_) {
        case Kind::uniform:
            return p1_ + (p2_ - p1_) * p;
        case Kind::two_point:
            return p <= 1.0 - p1_ ? p3_ : p4_;
        case Kind::semicircle: {
            const double r = p1_;
            const auto cdf = [r](double x) {
                return 0.5 + x * std::sqrt(r * r - x * x) /
                                 (std::numbers::pi * r * r) +
                       std::asin(x / r) / std::numbers::pi;
            };
            return bisect_quantile(p, -r, r, cdf);
        }
        case Kind::beta: {
            const double a = p1_, b = p2_;
            return bisect_quantile(
                p, 0.0, 1.0, [a, b](double x) { return beta_inc(a, b, x); });
        }
    }
    throw InvalidArgument("unknown target kind");
}

std::string TargetDist::describe() const {
    char buf[96];
    switch (kind_) {
        case Kind::uniform:
            std::snprintf(buf, sizeof buf, "uniform:%g,%g", p1_, p2_);
            break;
        case Kind::semicircle:
            std::snprintf(buf, sizeof buf, "semicircle:%g", p1_);
            break;
        case Kind::two_point:
            std::snprintf(buf, sizeof buf, "two_point:%g,%g,%g", p1_, p3_, p4_);
            break;
        case Kind::beta:
            std::snprintf(buf, sizeof buf, "beta:%g,%g", p1_, p2_);
            break;
    }
    return buf;
}

bool TargetDist::positive_support() const {
    switch (kind_) {
        case Kind::uniform:
            return p1_ > 0.0;
        case Kind::semicircle:
            return false;
        case Kind::two_point:
            return p3_ > 0.0;
        case Kind::beta:
            return true; // open interval (0,1); quantiles are positive
    }
    return false;
}

DiscreteMeasure quantile_discretize(const TargetDist& target, int N) {
    if (N < 1) throw InvalidArgument("N must be >= 1");
    std::vector<double> atoms(static_cast<std::size_t>(N));
    for (int j = 1; j <= N; ++j)
        atoms[static_cast<std::size_t>(j) - 1] =
            target.quantile((j - 0.5) / N);
    return DiscreteMeasure::uniform(std::move(atoms));
}

double SweepReport::error_trend(cplx u) const {
    std::vector<double> ns, errs;
    for (const auto& cell : cells)
        if (cell.u == u) {
            ns.push_back(static_cast<double>(cell.N));
            errs.push_back(cell.abs_err);
        }
    if (ns.size() < 2) return 0.0;
    return spearman(ns, errs);
}

double SweepReport::max_error_at(int N) const {
    double m = 0.0;
    for (const auto& cell : cells)
        if (cell.N == N) m = std::max(m, cell.abs_err);
    return m;
}

namespace {

constexpr int kReferenceAtoms = 2000;
constexpr double kReferenceTol = 1e-9;

struct EvalKey {
    std::vector<double> points;
    double u_re, u_im, theta, tol;
    bool mellin;
    bool operator<(const EvalKey& o) const {
        return std::tie(points, u_re, u_im, theta, tol, mellin) <
               std::tie(o.points, o.u_re, o.u_im, o.theta, o.tol, o.mellin);
    }
};

// Evaluation cache: classical and high-temperature sweeps over the same grid
// differ only through theta(N), so repeated (points, u, theta) cells are
// served from the memo.
std::mutex g_memo_mutex;
std::map<EvalKey, std::pair<cplx, double>> g_memo;

std::pair<cplx, double> eval_symmetric(const EvalKey& key) {
    {
        std::lock_guard<std::mutex> lock(g_memo_mutex);
        const auto hit = g_memo.find(key);
        if (hit != g_memo.end()) return hit->second;
    }
    std::pair<cplx, double> out;
    const cplx u(key.u_re, key.u_im);
    if (key.mellin) {
        HOQuery q{key.points, u, key.theta, key.tol};
        const QuadratureResult r = ho_rank_one(q);
        out = {r.value, r.abs_error_estimate};
    } else {
        BesselQuery q{key.points, u, key.theta, key.tol};
        const QuadratureResult r = bessel_rank_one(q);
        out = {r.value, r.abs_error_estimate};
    }
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    g_memo.emplace(key, out);
    return out;
}

// Shared harness: evaluates the symmetric function over the (N, u) grid in
// parallel and subtracts per-u reference values.
SweepReport run_sweep(const TargetDist& target, std::span<const cplx> u_grid,
                      std::span<const int> N_list,
                      const std::function<double(int)>& theta_of,
                      const std::function<cplx(cplx)>& reference,
                      bool mellin_side, double tol, int threads) {
    SweepReport report;
    report.target_kind = target.describe();
    std::vector<cplx> targets(u_grid.size());
    for (std::size_t k = 0; k < u_grid.size(); ++k)
        targets[k] = reference(u_grid[k]);

    const long n_cells = static_cast<long>(u_grid.size()) *
                         static_cast<long>(N_list.size());
    std::vector<SweepCell> cells(static_cast<std::size_t>(n_cells));

    parallel_for(n_cells, threads, [&](long idx) {
        const std::size_t ni = static_cast<std::size_t>(idx) / u_grid.size();
        const std::size_t ui = static_cast<std::size_t>(idx) % u_grid.size();
        const int N = N_list[ni];
        const cplx u = u_grid[ui];

        EvalKey key;
        key.points.reserve(static_cast<std::size_t>(N));
        for (int j = 1; j <= N; ++j)
            key.points.push_back(target.quantile((j - 0.5) / N));
        std::sort(key.points.begin(), key.points.end());
        key.u_re = u.real();
        key.u_im = u.imag();
        key.theta = theta_of(N);
        key.tol = tol;
        key.mellin = mellin_side;
        const auto [value, err] = eval_symmetric(key);

        SweepCell cell;
        cell.N = N;
        cell.u = u;
        cell.value = value;
        cell.target = targets[ui];
        cell.abs_err = std::abs(value - targets[ui]);
        cell.err_estimate = err;
        cells[static_cast<std::size_t>(idx)] = cell;
    });
    report.cells = std::move(cells);
    return report;
}

} // namespace

SweepReport classical_sweep(const TargetDist& target,
                            std::span<const cplx> u_grid,
                            std::span<const int> N_list,
                            const RegimeSchedule& schedule, double tol,
                            int threads) {
    if (schedule.regime != Regime::classical)
        throw InvalidArgument("classical_sweep needs a classical schedule");
    const DiscreteMeasure ref = quantile_discretize(target, kReferenceAtoms);
    const auto reference = [&](cplx u) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < ref.size(); ++j)
            s += ref.weights()[j] * std::exp(u * ref.atoms()[j]);
        return s;
    };
    return run_sweep(
        target, u_grid, N_list,
        [&](int N) { return 0.5 * schedule.beta_of(N); }, reference,
        /*mellin_side=*/false, tol, threads);
}

SweepReport high_temp_sweep(const TargetDist& target,
                            std::span<const cplx> u_grid,
                            std::span<const int> N_list, double c, double tol,
                            int threads) {
    if (!(c > 0.0)) throw InvalidArgument("c must be positive");
    const DiscreteMeasure ref = quantile_discretize(target, kReferenceAtoms);
    const auto reference = [&](cplx u) {
        return fourier_rho_c(ref, c, u, kReferenceTol).value;
    };
    return run_sweep(
        target, u_grid, N_list, [&](int N) { return c / N; }, reference,
        /*mellin_side=*/false, tol, threads);
}

SweepReport mellin_sweep(const TargetDist& target,
                         std::span<const cplx> u_grid,
                         std::span<const int> N_list,
                         const RegimeSchedule& schedule, double tol,
                         int threads) {
    if (!target.positive_support())
        throw InvalidArgument("mellin_sweep needs a positive-support target");
    if (schedule.regime == Regime::free_regime)
        throw InvalidArgument(
            "no limit formula is implemented for the free regime");
    if (schedule.regime == Regime::high_temperature)
        for (cplx u : u_grid)
            if (u.real() < 1.0)
                throw InvalidArgument(
                    "high-temperature Mellin sweep needs Re u >= 1");

    const DiscreteMeasure ref = quantile_discretize(target, kReferenceAtoms);
    const auto reference = [&](cplx u) -> cplx {
        if (schedule.regime == Regime::classical) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < ref.size(); ++j)
                s += ref.weights()[j] *
                     std::exp(u * std::log(ref.atoms()[j]));
            return s;
        }
        return mellin_rho_c(ref, schedule.c_target, u, kReferenceTol).value;
    };
    return run_sweep(
        target, u_grid, N_list,
        [&](int N) { return 0.5 * schedule.beta_of(N); }, reference,
        /*mellin_side=*/true, tol, threads);
}

} // namespace mkrein
