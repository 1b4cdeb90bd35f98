#include "mkrein/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "mkrein/stats.hpp"

// Branch bookkeeping used throughout this file and by the transform modules.
//
// Every integrand here is of the form e^{uz} * Π_j (z - x_j)^{-c_j} up to
// the substitution z = r ζ with r = sgn_rotation(u). In the ζ variable the
// integral becomes
//
//   (1/2πi) ∮_C e^{vζ} Π_j (ζ - x_j/r)^{-c_j} dζ,      v = u r,  Re v > 0,
//
// over the *unrotated* loop C, and each factor carries the principal
// logarithm whose cut runs horizontally to the left of x_j/r. C never
// crosses those cuts (the stem passes to their right, the rays above and
// below them), so the integrand is continuous along the whole loop in all
// four rotation cases. Prefactors are assembled from v with principal
// powers, which fixes the branch left open by writing u^{c-1} directly.

namespace mkrein {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Gauss-Kronrod 7-15 nodes and weights (positive half).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
    cplx a, b;
    cplx value;
    double error;
    double position; // arc-length midpoint, for the final ordered sum
    long id;
};

struct PanelWorse {
    bool operator()(const Panel& p, const Panel& q) const {
        if (p.error != q.error) return p.error < q.error;
        return p.id > q.id;
    }
};

Panel evaluate_panel(const Integrand& f, cplx a, cplx b, double position,
                     long id, long& n_evals) {
    const cplx mid = 0.5 * (a + b);
    const cplx half = 0.5 * (b - a);
    cplx resk = kWgk[7] * f(mid);
    cplx resg = kWg[3] * f(mid);
    n_evals += 1;
    for (int i = 0; i < 7; ++i) {
        const cplx f1 = f(mid - kXgk[i] * half);
        const cplx f2 = f(mid + kXgk[i] * half);
        n_evals += 2;
        resk += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * half;
    p.error = std::abs((resk - resg) * half);
    p.position = position;
    p.id = id;
    if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag()) ||
        !std::isfinite(p.error))
        throw NonFiniteSample("integrand returned a non-finite value");
    return p;
}

} // namespace

cplx sgn_rotation(cplx u) {
    if (u == cplx(0.0, 0.0))
        throw InvalidArgument("sgn rotation undefined at u = 0");
    if (u.real() > 0.0) return {1.0, 0.0};
    if (u.real() < 0.0) return {-1.0, 0.0};
    if (u.imag() > 0.0) return {0.0, -1.0};
    return {0.0, 1.0};
}

std::vector<cplx> HankelContour::vertices() const {
    if (!(half_height > 0.0))
        throw InvalidArgument("contour half_height must be positive");
    if (!(tail_length > stem_x))
        throw InvalidArgument("contour tail_length must exceed stem_x");
    const cplx bl{-tail_length, -half_height};
    const cplx br{stem_x, -half_height};
    const cplx tr{stem_x, half_height};
    const cplx tl{-tail_length, half_height};
    return {rotation * bl, rotation * br, rotation * tr, rotation * tl};
}

HankelContour build_contour(double cut_end, cplx u, double tail_length) {
    if (u == cplx(0.0, 0.0)) throw InvalidArgument("u must be nonzero");
    if (!(tail_length > std::fabs(cut_end) + 1.0))
        throw InvalidArgument("tail_length must exceed |cut_end| + 1");
    HankelContour c;
    c.stem_x = std::max(std::fabs(cut_end) + 1.0, 1.0);
    c.half_height = c.stem_x;
    c.tail_length = tail_length;
    c.rotation = sgn_rotation(u);
    return c;
}

QuadratureResult integrate_polyline(const Integrand& f,
                                    const std::vector<cplx>& vertices,
                                    const IntegrateOptions& opts) {
    if (vertices.size() < 2)
        throw InvalidArgument("polyline needs at least two vertices");
    double total_len = 0.0;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        total_len += std::abs(vertices[i + 1] - vertices[i]);

    double max_panel = opts.max_panel;
    if (!(max_panel > 0.0)) max_panel = std::max(total_len / 64.0, 1.0);

    long n_evals = 0;
    long next_id = 0;
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> queue;
    double queued_error = 0.0;
    double done_pos = 0.0;
    const auto push = [&](Panel p) {
        queued_error += p.error;
        queue.push(std::move(p));
    };

    // seed panels: long segments are split geometrically away from their
    // near end, so the tails of the rays start coarse
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        const cplx a = vertices[i], b = vertices[i + 1];
        const double len = std::abs(b - a);
        std::vector<double> cuts{0.0};
        // measure from the end nearer the stem: the last vertex pair of a
        // loop runs stem->tail, the first runs tail->stem
        const bool from_b = std::abs(a) > std::abs(b);
        double step = max_panel;
        double covered = 0.0;
        while (covered + step < len) {
            covered += step;
            cuts.push_back(covered);
            step *= 2.0;
        }
        cuts.push_back(len);
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            double lo = cuts[k], hi = cuts[k + 1];
            cplx pa, pb;
            if (from_b) {
                pa = b + (a - b) * (hi / len);
                pb = b + (a - b) * (lo / len);
            } else {
                pa = a + (b - a) * (lo / len);
                pb = a + (b - a) * (hi / len);
            }
            push(evaluate_panel(f, pa, pb, done_pos + 0.5 * (lo + hi),
                                next_id++, n_evals));
        }
        done_pos += len;
    }

    std::vector<Panel> accepted;
    const double raw_tol = opts.tol * two_pi;
    while (queued_error > raw_tol && !queue.empty()) {
        Panel worst = queue.top();
        queue.pop();
        queued_error -= worst.error;
        const double len = std::abs(worst.b - worst.a);
        if (len < 1e-14 * (1.0 + std::abs(worst.a))) {
            accepted.push_back(worst);
            continue;
        }
        if (n_evals > opts.max_evals)
            throw NonConvergence("quadrature evaluation budget exhausted");
        const cplx mid = 0.5 * (worst.a + worst.b);
        push(evaluate_panel(f, worst.a, mid, worst.position - len / 4,
                            next_id++, n_evals));
        push(evaluate_panel(f, mid, worst.b, worst.position + len / 4,
                            next_id++, n_evals));
    }
    while (!queue.empty()) {
        accepted.push_back(queue.top());
        queue.pop();
    }
    std::sort(accepted.begin(), accepted.end(),
              [](const Panel& p, const Panel& q) {
                  if (p.position != q.position) return p.position < q.position;
                  return p.id < q.id;
              });

    cplx sum = 0.0;
    double err = 0.0;
    for (const Panel& p : accepted) {
        sum += p.value;
        err += p.error;
    }
    QuadratureResult result;
    result.value = sum / cplx(0.0, two_pi);
    result.abs_error_estimate = err / two_pi;
    result.n_evals = n_evals;
    return result;
}

QuadratureResult integrate(const Integrand& f, const HankelContour& contour,
                           const IntegrateOptions& opts) {
    IntegrateOptions local = opts;
    if (!(local.max_panel > 0.0))
        local.max_panel = 2.0 * contour.half_height;
    QuadratureResult result = integrate_polyline(f, contour.vertices(), local);
    if (opts.decay_rate > 0.0) {
        const auto v = contour.vertices();
        const double tail_f = std::abs(f(v.front())) + std::abs(f(v.back()));
        result.truncation_bound =
            2.0 * tail_f / (opts.decay_rate * two_pi);
        result.n_evals += 2;
        result.abs_error_estimate += result.truncation_bound;
    }
    return result;
}

QuadratureResult integrate(const Integrand& f, const HankelContour& contour,
                           double tol) {
    IntegrateOptions opts;
    opts.tol = tol;
    return integrate(f, contour, opts);
}

double choose_tail_length(const Integrand& f, const HankelContour& contour,
                          double rate, double tol) {
    if (!(rate > 0.0)) throw InvalidArgument("decay rate must be positive");
    double L = std::max(contour.stem_x + 2.0,
                        contour.stem_x + (std::log(10.0 / tol) + 2.0) / rate);
    for (int i = 0; i < 200; ++i) {
        const cplx lo = contour.rotation * cplx(-L, -contour.half_height);
        const cplx hi = contour.rotation * cplx(-L, contour.half_height);
        const double bound =
            2.0 * (std::abs(f(lo)) + std::abs(f(hi))) / (rate * two_pi);
        if (bound <= tol / 10.0 || L > 1e9) return L;
        L *= 1.5;
    }
    return L;
}

cplx gamma_identity_check(double c, cplx u, double x, double tol) {
    if (!(c > 0.0)) throw InvalidArgument("c must be positive");
    if (u == cplx(0.0, 0.0)) throw InvalidArgument("u must be nonzero");
    const cplx r = sgn_rotation(u);
    const cplx v = u * r; // Re v > 0
    const cplx xi = x / r;

    HankelContour contour = build_contour(x, u, std::fabs(x) + 2.5);
    const Integrand f = [&](cplx z) {
        const cplx zeta = z / r;
        return std::exp(v * zeta - c * std::log(zeta - xi));
    };
    contour.tail_length = choose_tail_length(f, contour, v.real(), tol);

    IntegrateOptions opts;
    opts.tol = tol;
    opts.decay_rate = v.real();
    const QuadratureResult q = integrate(f, contour, opts);
    // the rotation Jacobian: ∮_{rC} f dz = r ∮_C f(rζ) dζ
    return std::exp(std::lgamma(c) + (1.0 - c) * std::log(v)) * q.value / r;
}

cplx beta_identity_check(double c, cplx u, double x, double tol) {
    if (!(c > 0.0)) throw InvalidArgument("c must be positive");
    if (!(u.real() > 0.0)) throw InvalidArgument("Re u must be positive");
    if (!(x > 0.0)) throw InvalidArgument("x must be positive");

    const double lx = std::log(x);
    HankelContour contour;
    contour.stem_x = lx + 1.0;
    // the integrand has periodic branch cuts at heights 2πk; stay below π
    contour.half_height = std::min(std::max(std::fabs(lx) + 1.0, 1.0),
                                   0.5 * std::numbers::pi);
    contour.rotation = 1.0;
    contour.tail_length = contour.stem_x + 2.0;

    const Integrand f = [&](cplx z) {
        return std::exp(u * z - c * std::log(1.0 - x * std::exp(-z)));
    };
    const double rate = u.real() + c;
    contour.tail_length = choose_tail_length(f, contour, rate, tol);

    IntegrateOptions opts;
    opts.tol = tol;
    opts.decay_rate = rate;
    const QuadratureResult q = integrate(f, contour, opts);
    const cplx pre = std::exp(std::lgamma(c) + log_gamma(u + 1.0) -
                              log_gamma(u + c));
    return pre * q.value;
}

} // namespace mkrein
