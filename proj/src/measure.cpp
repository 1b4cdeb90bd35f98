#include "mkrein/measure.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace mkrein {

DiscreteMeasure::DiscreteMeasure(std::vector<double> atoms,
                                 std::vector<double> weights) {
    if (atoms.empty()) throw InvalidMeasure("measure needs at least one atom");
    if (atoms.size() != weights.size())
        throw InvalidMeasure("atom/weight length mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!std::isfinite(atoms[i]))
            throw InvalidMeasure("non-finite atom");
        if (!(weights[i] >= 0.0))
            throw InvalidMeasure("negative weight");
        total += weights[i];
    }
    if (!(total > 0.0)) throw InvalidMeasure("total mass is zero");

    std::vector<std::size_t> idx(atoms.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return atoms[a] < atoms[b];
    });
    // merge exact duplicates only; fuzzy merging would make canonical forms
    // depend on input order
    for (std::size_t k : idx) {
        if (weights[k] == 0.0) continue;
        if (!atoms_.empty() && atoms_.back() == atoms[k]) {
            weights_.back() += weights[k] / total;
        } else {
            atoms_.push_back(atoms[k]);
            weights_.push_back(weights[k] / total);
        }
    }
}

DiscreteMeasure DiscreteMeasure::uniform(std::vector<double> atoms) {
    return DiscreteMeasure(atoms, std::vector<double>(atoms.size(), 1.0));
}

DiscreteMeasure make_measure(std::vector<double> atoms,
                             std::optional<std::vector<double>> weights) {
    if (weights) return DiscreteMeasure(std::move(atoms), std::move(*weights));
    return DiscreteMeasure::uniform(std::move(atoms));
}

DiscreteMeasure truncate(const DiscreteMeasure& rho, double M) {
    if (!(M > 0.0)) throw InvalidArgument("truncation level M must be > 0");
    std::vector<double> atoms, weights;
    double below = 0.0, above = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double a = rho.atoms()[i], w = rho.weights()[i];
        if (a <= -M)
            below += w;
        else if (a >= M)
            above += w;
        else {
            atoms.push_back(a);
            weights.push_back(w);
        }
    }
    if (below > 0.0) {
        atoms.push_back(-M);
        weights.push_back(below);
    }
    if (above > 0.0) {
        atoms.push_back(M);
        weights.push_back(above);
    }
    return DiscreteMeasure(std::move(atoms), std::move(weights));
}

cplx g_function(const DiscreteMeasure& rho, cplx z) {
    cplx sum = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const cplx d = z - rho.atoms()[i];
        if (d == cplx(0.0, 0.0))
            throw SingularEvaluation("g_function evaluated at an atom");
        sum += rho.weights()[i] * std::log(d);
    }
    return sum;
}

cplx stieltjes(const DiscreteMeasure& rho, cplx z) {
    cplx sum = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const cplx d = z - rho.atoms()[i];
        if (d == cplx(0.0, 0.0))
            throw SingularEvaluation("stieltjes evaluated at an atom");
        sum += rho.weights()[i] / d;
    }
    return sum;
}

MomentVector moments(const DiscreteMeasure& rho, int n_max) {
    if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
    MomentVector m;
    m.order = n_max;
    m.values.assign(n_max, 0.0);
    for (std::size_t i = 0; i < rho.size(); ++i) {
        double p = 1.0;
        for (int k = 0; k < n_max; ++k) {
            p *= rho.atoms()[i];
            m.values[k] += rho.weights()[i] * p;
        }
    }
    return m;
}

double hankel_min_eigenvalue(const MomentVector& m) {
    const int half = m.order / 2;
    Eigen::MatrixXd H(half + 1, half + 1);
    for (int i = 0; i <= half; ++i)
        for (int j = 0; j <= half; ++j) {
            const int k = i + j;
            H(i, j) = (k == 0) ? 1.0 : m.values[k - 1];
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    return es.eigenvalues().minCoeff();
}

double in_class_V(const DiscreteMeasure& rho) {
    double s = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i)
        s += rho.weights()[i] * std::log1p(rho.atoms()[i] * rho.atoms()[i]);
    return s;
}

// ---------------------------------------------------------------------------
// eta-Wasserstein. The test class min(|x-y|, |x-y|^eta) is a concave metric
// transform, so the dual LP equals the transshipment cost of the signed
// discrepancy mu - nu. Successive shortest paths with potentials solve that
// LP exactly and certify optimality through the reduced costs.

namespace {

double eta_cost(double x, double y, double eta) {
    const double t = std::fabs(x - y);
    if (t == 0.0) return 0.0;
    return std::min(t, std::pow(t, eta));
}

} // namespace

double eta_wasserstein(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                       double eta) {
    if (!(eta > 0.0 && eta < 1.0))
        throw InvalidArgument("eta must lie in (0,1)");

    // union support with signed weights; common mass cancels
    std::vector<std::pair<double, double>> signed_mass;
    for (std::size_t i = 0; i < mu.size(); ++i)
        signed_mass.emplace_back(mu.atoms()[i], mu.weights()[i]);
    for (std::size_t i = 0; i < nu.size(); ++i)
        signed_mass.emplace_back(nu.atoms()[i], -nu.weights()[i]);
    std::sort(signed_mass.begin(), signed_mass.end());

    std::vector<double> x, d;
    for (const auto& [a, w] : signed_mass) {
        if (!x.empty() && x.back() == a)
            d.back() += w;
        else {
            x.push_back(a);
            d.push_back(w);
        }
    }
    const std::size_t n = x.size();
    double total_pos = 0.0;
    for (double v : d) total_pos += std::max(v, 0.0);
    if (total_pos < 1e-15) return 0.0;
    if (n > 4000)
        throw InvalidArgument("eta_wasserstein support too large");

    std::vector<double> cost(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            cost[i * n + j] = eta_cost(x[i], x[j], eta);

    std::vector<double> excess = d;
    std::vector<double> pi(n, 0.0);
    std::vector<double> flow(n * n, 0.0);
    const double mass_tol = 1e-14 * total_pos;
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> dist(n);
    std::vector<int> parent(n);
    std::vector<char> settled(n);

    for (std::size_t iter = 0; iter < 20 * n + 20; ++iter) {
        bool any_source = false;
        for (std::size_t i = 0; i < n; ++i)
            if (excess[i] > mass_tol) any_source = true;
        if (!any_source) {
            double value = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    value += flow[i * n + j] * cost[i * n + j];
            return value;
        }

        // multi-source Dijkstra on reduced costs, stop at the first deficit
        for (std::size_t i = 0; i < n; ++i) {
            dist[i] = excess[i] > mass_tol ? 0.0 : inf;
            parent[i] = -1;
            settled[i] = 0;
        }
        int sink = -1;
        for (;;) {
            int best = -1;
            for (std::size_t i = 0; i < n; ++i)
                if (!settled[i] && dist[i] < inf &&
                    (best < 0 || dist[i] < dist[best]))
                    best = static_cast<int>(i);
            if (best < 0) break;
            settled[best] = 1;
            if (excess[best] < -mass_tol) {
                sink = best;
                break;
            }
            const std::size_t b = static_cast<std::size_t>(best);
            for (std::size_t j = 0; j < n; ++j) {
                if (settled[j] || j == b) continue;
                double w = cost[b * n + j] + pi[b] - pi[j];
                if (flow[j * n + b] > 0.0)
                    w = std::min(w, -cost[j * n + b] + pi[b] - pi[j]);
                if (w < 0.0) w = 0.0; // roundoff guard
                if (dist[b] + w < dist[j]) {
                    dist[j] = dist[b] + w;
                    parent[j] = best;
                }
            }
        }
        if (sink < 0)
            throw NonConvergence("eta_wasserstein: no augmenting path");

        const double reach = dist[sink];
        for (std::size_t i = 0; i < n; ++i)
            pi[i] += std::min(dist[i], reach);

        // walk back to the source, find the bottleneck
        double amount = -excess[sink];
        int node = sink;
        while (parent[node] >= 0) {
            const int p = parent[node];
            if (flow[static_cast<std::size_t>(node) * n + p] > 0.0)
                amount = std::min(
                    amount, flow[static_cast<std::size_t>(node) * n + p]);
            node = p;
        }
        amount = std::min(amount, excess[node]);
        if (!(amount > 0.0))
            throw NonConvergence("eta_wasserstein: degenerate augmentation");

        int v = sink;
        while (parent[v] >= 0) {
            const int p = parent[v];
            const std::size_t fwd = static_cast<std::size_t>(p) * n + v;
            const std::size_t bwd = static_cast<std::size_t>(v) * n + p;
            const double cancel = std::min(amount, flow[bwd]);
            flow[bwd] -= cancel;
            flow[fwd] += amount - cancel;
            v = p;
        }
        excess[node] -= amount;
        excess[sink] += amount;
    }
    throw NonConvergence("eta_wasserstein: iteration guard exceeded");
}

// ---------------------------------------------------------------------------
// CSV

DiscreteMeasure read_measure_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw InvalidMeasure("empty measure file");
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
        line.pop_back();
    bool has_weight;
    if (line == "atom,weight")
        has_weight = true;
    else if (line == "atom")
        has_weight = false;
    else
        throw InvalidMeasure("measure CSV must start with 'atom,weight' or 'atom'");

    std::vector<double> atoms, weights;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
            line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        if (!std::getline(row, field, ','))
            throw InvalidMeasure("bad row in measure CSV at line " +
                                 std::to_string(lineno));
        atoms.push_back(std::stod(field));
        if (has_weight) {
            if (!std::getline(row, field, ','))
                throw InvalidMeasure("missing weight at line " +
                                     std::to_string(lineno));
            weights.push_back(std::stod(field));
        }
    }
    if (has_weight) return DiscreteMeasure(std::move(atoms), std::move(weights));
    return DiscreteMeasure::uniform(std::move(atoms));
}

DiscreteMeasure read_measure_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidMeasure("cannot open measure file: " + path);
    return read_measure_csv(in);
}

void write_measure_csv(std::ostream& out, const DiscreteMeasure& rho) {
    out << "atom,weight\n";
    char buf[64];
    for (std::size_t i = 0; i < rho.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", rho.atoms()[i],
                      rho.weights()[i]);
        out << buf;
    }
}

} // namespace mkrein
