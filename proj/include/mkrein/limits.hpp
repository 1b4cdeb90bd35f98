#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "mkrein/measure.hpp"

namespace mkrein {

enum class Regime { classical, high_temperature, free_regime };

// beta_N schedule per regime: classical uses beta_N = 1/N^2 (so N beta_N -> 0),
// high temperature uses beta_N = 2 c_target / N (so N beta_N / 2 -> c_target).
struct RegimeSchedule {
    Regime regime = Regime::classical;
    double c_target = 1.0;

    double beta_of(int N) const;
    double c_of(int N) const { return 0.5 * N * beta_of(N); }
};

// Named limiting distributions for the approximation sequences.
class TargetDist {
public:
    enum class Kind { uniform, semicircle, two_point, beta };

    static TargetDist uniform(double a, double b);
    static TargetDist semicircle(double radius);
    static TargetDist two_point(double p, double x0 = 0.0, double x1 = 1.0);
    static TargetDist beta(double alpha, double beta);
    static TargetDist parse(const std::string& text); // e.g. "uniform:0,1"

    Kind kind() const { return kind_; }
    double quantile(double p) const;
    std::string describe() const;
    bool positive_support() const;

private:
    Kind kind_ = Kind::uniform;
    double p1_ = 0.0, p2_ = 1.0, p3_ = 0.0, p4_ = 1.0;
};

// rho_N with atoms at the ((j-1/2)/N)-quantiles, uniform weights 1/N.
DiscreteMeasure quantile_discretize(const TargetDist& target, int N);

struct SweepCell {
    int N = 0;
    cplx u{};
    cplx value{};
    cplx target{};
    double abs_err = 0.0;
    double err_estimate = 0.0;
};

struct SweepReport {
    std::string target_kind;
    std::vector<SweepCell> cells;

    // Spearman rank correlation of |error| against N for one u; negative
    // values indicate the expected decreasing trend.
    double error_trend(cplx u) const;
    double max_error_at(int N) const;
};

// Classical regime: the symmetric-function value against the transform of
// the target itself (2000-atom reference discretization).
SweepReport classical_sweep(const TargetDist& target,
                            std::span<const cplx> u_grid,
                            std::span<const int> N_list,
                            const RegimeSchedule& schedule, double tol = 1e-8,
                            int threads = 1);

// High-temperature regime: against fourier_rho_c of the 2000-atom reference.
SweepReport high_temp_sweep(const TargetDist& target,
                            std::span<const cplx> u_grid,
                            std::span<const int> N_list, double c,
                            double tol = 1e-8, int threads = 1);

// Mellin side (positive targets, Re u >= 1 in the high-temperature regime).
SweepReport mellin_sweep(const TargetDist& target,
                         std::span<const cplx> u_grid,
                         std::span<const int> N_list,
                         const RegimeSchedule& schedule, double tol = 1e-8,
                         int threads = 1);

} // namespace mkrein
