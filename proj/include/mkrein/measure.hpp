#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mkrein/errors.hpp"

namespace mkrein {

using cplx = std::complex<double>;

// Finitely supported probability measure on the real line. Construction
// canonicalizes: atoms sorted ascending, exact duplicates merged (weights
// summed), weights renormalized to total mass 1.
class DiscreteMeasure {
public:
    DiscreteMeasure(std::vector<double> atoms, std::vector<double> weights);
    static DiscreteMeasure uniform(std::vector<double> atoms);

    const std::vector<double>& atoms() const { return atoms_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return atoms_.size(); }
    double min_atom() const { return atoms_.front(); }
    double max_atom() const { return atoms_.back(); }

    bool operator==(const DiscreteMeasure& other) const = default;

private:
    std::vector<double> atoms_;
    std::vector<double> weights_;
};

DiscreteMeasure make_measure(std::vector<double> atoms,
                             std::optional<std::vector<double>> weights = {});

// Mass below -M is moved to an atom at -M, mass above M to an atom at M;
// the open interval (-M, M) is untouched.
DiscreteMeasure truncate(const DiscreteMeasure& rho, double M);

// g_rho(z) = sum_j w_j Log(z - a_j), principal logarithm per atom.
cplx g_function(const DiscreteMeasure& rho, cplx z);

// G_rho(z) = sum_j w_j / (z - a_j).
cplx stieltjes(const DiscreteMeasure& rho, cplx z);

struct MomentVector {
    int order = 0;                 // n_max
    std::vector<double> values;    // m_1 .. m_{n_max}
};

MomentVector moments(const DiscreteMeasure& rho, int n_max);

// Minimum eigenvalue of the Hankel matrix [m_{i+j}], 0 <= i,j <= n_max/2,
// with m_0 = 1. Nonnegative (up to roundoff) iff the vector is a genuine
// moment sequence.
double hankel_min_eigenvalue(const MomentVector& m);

// Extended eta-Wasserstein distance: sup over h with
// |h(x)-h(y)| <= min(|x-y|, |x-y|^eta) of |integral h d(mu-nu)|.
// Solved exactly as the finite dual-potential LP via its transshipment
// equivalent (successive shortest paths with node potentials).
double eta_wasserstein(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                       double eta);

// integral of log(1+x^2) d rho; always finite here, reported for diagnostics.
double in_class_V(const DiscreteMeasure& rho);

// CSV with header "atom,weight"; an "atom"-only file implies uniform weights.
DiscreteMeasure read_measure_csv(std::istream& in);
DiscreteMeasure read_measure_csv_file(const std::string& path);
void write_measure_csv(std::ostream& out, const DiscreteMeasure& rho);

} // namespace mkrein
