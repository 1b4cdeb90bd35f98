// mkrein: contour-quadrature evaluation of rank-one multivariate Bessel and
// Heckman-Opdam hypergeometric functions, Dirichlet-process random-mean
// simulation, and Markov-Krein consistency checks.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mkrein/bessel.hpp"
#include "mkrein/contour.hpp"
#include "mkrein/dirichlet.hpp"
#include "mkrein/heckman_opdam.hpp"
#include "mkrein/limits.hpp"
#include "mkrein/markov_krein.hpp"
#include "mkrein/measure.hpp"
#include "mkrein/parallel.hpp"

using mkrein::cplx;
using json = nlohmann::ordered_json;

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

cplx parse_complex(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw mkrein::InvalidArgument("empty complex literal");
    const bool has_i = s.back() == 'i' || s.back() == 'I';
    if (!has_i) return {std::stod(s), 0.0};
    s.pop_back();
    // split at the last top-level +/- (not part of an exponent)
    std::size_t split = std::string::npos;
    for (std::size_t k = 1; k < s.size(); ++k) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E')
            split = k;
    }
    if (split == std::string::npos) {
        if (s.empty() || s == "+") return {0.0, 1.0};
        if (s == "-") return {0.0, -1.0};
        return {0.0, std::stod(s)};
    }
    const double re = std::stod(s.substr(0, split));
    std::string im_part = s.substr(split);
    if (im_part == "+") return {re, 1.0};
    if (im_part == "-") return {re, -1.0};
    return {re, std::stod(im_part)};
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ','))
        if (!field.empty()) out.push_back(field);
    return out;
}

std::vector<double> parse_reals(const std::string& text) {
    std::vector<double> out;
    for (const auto& f : split_list(text)) out.push_back(std::stod(f));
    return out;
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    for (const auto& f : split_list(text)) out.push_back(std::stoi(f));
    return out;
}

// complex lists use entries like "1,2i,1+2i"
std::vector<cplx> parse_complex_list(const std::string& text) {
    std::vector<cplx> out;
    for (const auto& f : split_list(text)) out.push_back(parse_complex(f));
    return out;
}

struct Output {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path, std::ios::binary);
        if (!file)
            throw mkrein::InvalidArgument("cannot open output file: " + path);
        stream = &file;
    }
    std::ostream& os() { return *stream; }
};

// every run starts its output with the fully resolved configuration
std::string config_echo(
    const std::string& sub,
    const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string line = "# mkrein " + sub;
    for (const auto& [k, v] : kv) line += " " + k + "=" + v;
    return line;
}

int resolve_threads(int flag_value) {
    if (const char* env = std::getenv("MKREIN_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (...) {
        }
    }
    if (flag_value >= 1) return flag_value;
    return mkrein::default_thread_count();
}

std::vector<double> load_points(const std::string& inline_list,
                                const std::string& file) {
    if (!inline_list.empty() && !file.empty())
        throw mkrein::InvalidArgument(
            "give either an inline point list or a CSV file, not both");
    if (!file.empty()) {
        const auto m = mkrein::read_measure_csv_file(file);
        const double w0 = m.weights().front();
        for (double w : m.weights())
            if (std::fabs(w - w0) > 1e-12)
                throw mkrein::InvalidArgument(
                    "point lists need uniform weights; use `transform` for "
                    "weighted measures");
        return m.atoms();
    }
    if (inline_list.empty())
        throw mkrein::InvalidArgument("no points given");
    auto pts = parse_reals(inline_list);
    std::sort(pts.begin(), pts.end());
    return pts;
}

void write_value_rows(std::ostream& os, const std::string& header_comment,
                      const std::vector<cplx>& us,
                      const std::vector<mkrein::QuadratureResult>& results) {
    os << header_comment << "\n";
    os << "u_re,u_im,value_re,value_im,err_est\n";
    for (std::size_t i = 0; i < us.size(); ++i)
        os << fmt(us[i].real()) << "," << fmt(us[i].imag()) << ","
           << fmt(results[i].value.real()) << ","
           << fmt(results[i].value.imag()) << ","
           << fmt(results[i].abs_error_estimate) << "\n";
}

int run_selftest() {
    int failures = 0;
    const auto check = [&](const char* name, double dev, double bound) {
        const bool ok = dev <= bound;
        std::printf("%-34s %s  (dev %.3e, bound %.1e)\n", name,
                    ok ? "[PASS]" : "[FAIL]", dev, bound);
        if (!ok) ++failures;
    };

    double worst = 0.0;
    for (cplx u :
         {cplx(1, 0), cplx(-1, 0), cplx(0, 2), cplx(0, -2), cplx(1, 1)})
        for (double c : {0.5, 1.0, 2.5})
            for (double x : {-1.0, 0.0, 0.7})
                worst = std::max(
                    worst, std::abs(mkrein::gamma_identity_check(c, u, x,
                                                                 1e-8) -
                                    std::exp(u * x)));
    check("reciprocal-Gamma identity", worst, 1e-6);

    worst = 0.0;
    for (cplx u : {cplx(1, 0), cplx(1, 1)})
        for (double c : {0.5, 1.0, 2.5})
            worst = std::max(
                worst, std::abs(mkrein::beta_identity_check(c, u, 0.7, 1e-8) -
                                std::exp(u * std::log(0.7))));
    check("Beta identity", worst, 1e-6);

    worst = 0.0;
    for (cplx u : {cplx(1, 0), cplx(0, 3), cplx(-2, 0)}) {
        mkrein::BesselQuery q;
        q.points = {0.0, 1.0, 2.0};
        q.u = u;
        q.theta = 1.0;
        q.tol = 1e-9;
        const cplx got = mkrein::bessel_rank_one(q).value;
        const cplx want = mkrein::bessel_theta_one(q.points, u);
        worst = std::max(worst, std::abs(got - want) / std::abs(want));
    }
    check("Bessel residue oracle", worst, 1e-6);

    const cplx f = mkrein::fourier_rho_c(
                       mkrein::DiscreteMeasure::uniform({0.0, 1.0}), 2.0, 1.0,
                       1e-9)
                       .value;
    check("Fourier transform of Uniform[0,1]",
          std::abs(f - (std::exp(1.0) - 1.0)), 1e-6);
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "mkrein: Hankel-contour evaluation of rank-one Bessel and "
        "Heckman-Opdam functions, Dirichlet-process random means, and "
        "Markov-Krein consistency checks"};
    app.require_subcommand(1);

    int threads_flag = 0;
    app.add_option("--threads", threads_flag,
                   "worker threads (default: all cores; env MKREIN_THREADS "
                   "overrides)");

    std::string out_path = "-", points_list, points_file, base_path,
                base2_path, u_list = "1", z_list, target_text = "uniform:0,1",
                regime_text = "classical", kind_text = "fourier",
                contour_text = "hankel", n_list_text = "10,20,40,80";
    double theta = 1.0, tol = 1e-8, c_value = 1.0, delta = 1.0, u_re = 1.0,
           u_im = 0.0;
    long n_samples = 1000;
    std::uint64_t seed = 42;
    int shards = 1, n_max = 8;

    auto* bessel = app.add_subcommand(
        "bessel", "rank-one multivariate Bessel function B(u; N, theta)");
    bessel->add_option("--points", points_list,
                       "comma-separated atom positions a_1..a_N");
    bessel->add_option("--points-file", points_file,
                       "CSV measure file (uniform weights)");
    bessel->add_option("--theta", theta, "Dyson-type parameter theta > 0")
        ->capture_default_str();
    bessel->add_option("--u", u_list,
                       "argument(s), complex literals like 1, 2i, 1+2i")
        ->capture_default_str();
    bessel->add_option("--tol", tol, "absolute quadrature tolerance")
        ->capture_default_str();
    bessel->add_option("--out", out_path, "output CSV path ('-' = stdout)")
        ->capture_default_str();

    auto* ho = app.add_subcommand(
        "ho",
        "rank-one Heckman-Opdam hypergeometric function F(u; N, theta)");
    ho->add_option("--points", points_list, "positive atoms a_1..a_N");
    ho->add_option("--points-file", points_file,
                   "CSV measure file (uniform weights)");
    ho->add_option("--theta", theta, "theta > 0")->capture_default_str();
    ho->add_option("--u", u_list, "argument(s) with Re u > 0")
        ->capture_default_str();
    ho->add_option("--tol", tol, "absolute quadrature tolerance")
        ->capture_default_str();
    ho->add_option("--out", out_path, "output CSV path ('-' = stdout)")
        ->capture_default_str();

    auto* transform = app.add_subcommand(
        "transform",
        "Fourier or Mellin transform of the random-mean law rho^(c)");
    transform->add_option("--base", base_path, "base measure CSV")->required();
    transform->add_option("--c", c_value, "concentration c > 0")
        ->capture_default_str();
    transform->add_option("--kind", kind_text, "fourier|mellin")
        ->capture_default_str();
    transform->add_option("--u-re", u_re, "Re u")->capture_default_str();
    transform->add_option("--u-im", u_im, "Im u")->capture_default_str();
    transform->add_option("--tol", tol, "absolute quadrature tolerance")
        ->capture_default_str();
    transform
        ->add_option("--contour", contour_text,
                     "hankel|line (line: Fourier with Re u = 0 only)")
        ->capture_default_str();
    transform
        ->add_option("--delta", delta,
                     "distance of the line contour from the real axis")
        ->capture_default_str();
    transform->add_option("--out", out_path, "output CSV path")
        ->capture_default_str();

    auto* dp = app.add_subcommand(
        "dp-mean", "Monte Carlo samples of the Dirichlet-process random mean");
    dp->add_option("--base", base_path, "base measure CSV")->required();
    dp->add_option("--c", c_value, "concentration c > 0")
        ->capture_default_str();
    dp->add_option("--samples", n_samples, "number of samples")
        ->capture_default_str();
    dp->add_option("--seed", seed, "64-bit RNG seed")->capture_default_str();
    dp->add_option("--shards", shards,
                   "work partitions (sample values depend on the seed only)")
        ->capture_default_str();
    dp->add_option("--out", out_path, "output CSV path")
        ->capture_default_str();

    auto* mkcheck = app.add_subcommand(
        "mk-check",
        "Monte Carlo residuals of the Markov-Krein correspondence");
    mkcheck->add_option("--base", base_path, "base measure CSV")->required();
    mkcheck->add_option("--c", c_value, "concentration c > 0")
        ->capture_default_str();
    mkcheck->add_option("--samples", n_samples, "Monte Carlo sample count")
        ->capture_default_str();
    mkcheck->add_option("--seed", seed, "64-bit RNG seed")
        ->capture_default_str();
    mkcheck
        ->add_option("--z", z_list,
                     "grid points with |Im z| >= 0.5 (default built-in grid)")
        ->capture_default_str();
    mkcheck->add_option("--out", out_path, "output JSON path")
        ->capture_default_str();

    auto* mkmom = app.add_subcommand(
        "mk-moments", "moments of rho^(c) and c-cumulants from a measure");
    mkmom->add_option("--base", base_path, "base measure CSV")->required();
    mkmom->add_option("--c", c_value, "concentration c > 0")
        ->capture_default_str();
    mkmom->add_option("--n-max", n_max, "moment order (<= 24)")
        ->capture_default_str();
    mkmom->add_option("--out", out_path, "output JSON path")
        ->capture_default_str();

    auto* conj = app.add_subcommand(
        "conjecture",
        "additive-convolution positivity probe (consistency check only)");
    conj->add_option("--base1", base_path, "first measure CSV")->required();
    conj->add_option("--base2", base2_path, "second measure CSV")->required();
    conj->add_option("--c", c_value, "concentration c > 0")
        ->capture_default_str();
    conj->add_option("--n-max", n_max, "even moment order (<= 24)")
        ->capture_default_str();
    conj->add_option("--out", out_path, "output JSON path")
        ->capture_default_str();

    auto* sweep = app.add_subcommand(
        "sweep", "convergence sweep of the symmetric functions over N");
    sweep
        ->add_option("--target", target_text,
                     "uniform:a,b | semicircle:r | two_point:p[,x0,x1] | "
                     "beta:alpha,beta")
        ->capture_default_str();
    sweep->add_option("--regime", regime_text, "classical|high-temp")
        ->capture_default_str();
    sweep->add_option("--c", c_value, "high-temperature target c")
        ->capture_default_str();
    sweep->add_option("--N", n_list_text, "comma-separated N values")
        ->capture_default_str();
    sweep->add_option("--u", u_list, "comma-separated complex arguments")
        ->capture_default_str();
    sweep->add_option("--kind", kind_text, "fourier|mellin")
        ->capture_default_str();
    sweep->add_option("--tol", tol, "per-evaluation tolerance")
        ->capture_default_str();
    sweep->add_option("--out", out_path, "output CSV path")
        ->capture_default_str();

    auto* selftest = app.add_subcommand(
        "selftest", "quick quadrature and oracle self-checks");
    (void)selftest;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const int threads = resolve_threads(threads_flag);

    try {
        if (bessel->parsed() || ho->parsed()) {
            const auto points = load_points(points_list, points_file);
            const auto us = parse_complex_list(u_list);
            std::vector<mkrein::QuadratureResult> results;
            results.reserve(us.size());
            for (cplx u : us) {
                if (bessel->parsed())
                    results.push_back(
                        mkrein::bessel_rank_one({points, u, theta, tol}));
                else
                    results.push_back(
                        mkrein::ho_rank_one({points, u, theta, tol}));
            }
            std::string pts;
            for (std::size_t i = 0; i < points.size(); ++i)
                pts += (i ? "," : "") + fmt(points[i]);
            Output out(out_path);
            write_value_rows(out.os(),
                             config_echo(bessel->parsed() ? "bessel" : "ho",
                                         {{"points", pts},
                                          {"theta", fmt(theta)},
                                          {"u", u_list},
                                          {"tol", fmt(tol)}}),
                             us, results);
        } else if (transform->parsed()) {
            const auto base = mkrein::read_measure_csv_file(base_path);
            const cplx u(u_re, u_im);
            mkrein::QuadratureResult r;
            if (kind_text == "fourier") {
                if (contour_text != "line" && contour_text != "hankel")
                    throw mkrein::InvalidArgument("unknown contour: " +
                                                  contour_text);
                const auto kind = contour_text == "line"
                                      ? mkrein::ContourKind::line
                                      : mkrein::ContourKind::hankel;
                r = mkrein::fourier_rho_c(base, c_value, u, tol, kind, delta);
            } else if (kind_text == "mellin") {
                if (contour_text == "line")
                    throw mkrein::InvalidArgument(
                        "line contour applies to the Fourier transform only");
                r = mkrein::mellin_rho_c(base, c_value, u, tol);
            } else {
                throw mkrein::InvalidArgument("unknown kind: " + kind_text);
            }
            Output out(out_path);
            write_value_rows(out.os(),
                             config_echo("transform",
                                         {{"base", base_path},
                                          {"c", fmt(c_value)},
                                          {"kind", kind_text},
                                          {"u_re", fmt(u_re)},
                                          {"u_im", fmt(u_im)},
                                          {"tol", fmt(tol)},
                                          {"contour", contour_text},
                                          {"delta", fmt(delta)}}),
                             {u}, {r});
        } else if (dp->parsed()) {
            const auto base = mkrein::read_measure_csv_file(base_path);
            const mkrein::DPConfig cfg{base, c_value, n_samples, seed,
                                       shards};
            const auto sample = mkrein::random_mean_samples(cfg, threads);
            Output out(out_path);
            out.os() << config_echo("dp-mean",
                                    {{"base", base_path},
                                     {"c", fmt(c_value)},
                                     {"samples", std::to_string(n_samples)},
                                     {"seed", std::to_string(seed)},
                                     {"shards", std::to_string(shards)}})
                     << "\n"
                     << "sample\n";
            for (double v : sample.values) out.os() << fmt(v) << "\n";
        } else if (mkcheck->parsed()) {
            const auto base = mkrein::read_measure_csv_file(base_path);
            std::vector<cplx> grid;
            if (z_list.empty())
                grid = {cplx(1, 1),  cplx(-1, 1),  cplx(0, 2),
                        cplx(2, -1), cplx(-2, -1), cplx(0, 3)};
            else
                grid = parse_complex_list(z_list);
            const mkrein::DPConfig cfg{base, c_value, n_samples, seed, 1};
            const auto sample = mkrein::random_mean_samples(cfg, threads);
            const auto report =
                mkrein::mk_residual(base, c_value, sample, grid);
            json doc;
            doc["config"] = {{"base", base_path},
                             {"c", c_value},
                             {"samples", n_samples},
                             {"seed", seed}};
            doc["max_residual"] = report.max_residual;
            doc["per_point"] = json::array();
            for (std::size_t i = 0; i < report.z_grid.size(); ++i)
                doc["per_point"].push_back(
                    {{"z_re", report.z_grid[i].real()},
                     {"z_im", report.z_grid[i].imag()},
                     {"residual", report.per_point[i]},
                     {"tol_3sigma", report.tol_3sigma[i]}});
            Output out(out_path);
            out.os() << doc.dump(2) << "\n";
        } else if (mkmom->parsed()) {
            const auto base = mkrein::read_measure_csv_file(base_path);
            const auto m = mkrein::moments(base, n_max);
            const auto mp = mkrein::mk_moments(m, c_value, n_max);
            const auto kap = mkrein::c_cumulants(mp);
            json doc;
            doc["config"] = {{"base", base_path},
                             {"c", c_value},
                             {"n_max", n_max}};
            doc["moments_rho"] = m.values;
            doc["moments_rho_c"] = mp.values;
            doc["kappa"] = kap.kappa;
            doc["kappa_tilde"] = kap.kappa_tilde;
            doc["hankel_min_eig_rho_c"] = mkrein::hankel_min_eigenvalue(mp);
            Output out(out_path);
            out.os() << doc.dump(2) << "\n";
        } else if (conj->parsed()) {
            const auto rho1 = mkrein::read_measure_csv_file(base_path);
            const auto rho2 = mkrein::read_measure_csv_file(base2_path);
            const auto probe =
                mkrein::conjecture_probe(rho1, rho2, c_value, n_max);
            json doc;
            doc["config"] = {{"base1", base_path},
                             {"base2", base2_path},
                             {"c", c_value},
                             {"n_max", n_max}};
            doc["mu_moments"] = probe.mu_moments.values;
            doc["hankel_min_eig"] = probe.hankel_min_eig;
            doc["verdict"] = probe.hankel_min_eig >= -1e-6
                                 ? "consistent"
                                 : "candidate counterexample";
            Output out(out_path);
            out.os() << doc.dump(2) << "\n";
        } else if (sweep->parsed()) {
            const auto target = mkrein::TargetDist::parse(target_text);
            const auto ns = parse_ints(n_list_text);
            const auto us = parse_complex_list(u_list);
            mkrein::SweepReport report;
            if (kind_text == "mellin") {
                mkrein::RegimeSchedule sched;
                sched.regime = regime_text == "high-temp"
                                   ? mkrein::Regime::high_temperature
                                   : mkrein::Regime::classical;
                sched.c_target = c_value;
                report =
                    mkrein::mellin_sweep(target, us, ns, sched, tol, threads);
            } else if (kind_text != "fourier") {
                throw mkrein::InvalidArgument("unknown kind: " + kind_text);
            } else if (regime_text == "high-temp") {
                report = mkrein::high_temp_sweep(target, us, ns, c_value, tol,
                                                 threads);
            } else if (regime_text == "classical") {
                mkrein::RegimeSchedule sched;
                sched.regime = mkrein::Regime::classical;
                report = mkrein::classical_sweep(target, us, ns, sched, tol,
                                                 threads);
            } else {
                throw mkrein::InvalidArgument("unknown regime: " +
                                              regime_text);
            }
            Output out(out_path);
            out.os() << config_echo("sweep",
                                    {{"target", target_text},
                                     {"regime", regime_text},
                                     {"c", fmt(c_value)},
                                     {"N", n_list_text},
                                     {"u", u_list},
                                     {"kind", kind_text},
                                     {"tol", fmt(tol)}})
                     << "\n"
                     << "N,u_re,u_im,value_re,value_im,target_re,target_im,"
                        "abs_err\n";
            for (const auto& cell : report.cells)
                out.os() << cell.N << "," << fmt(cell.u.real()) << ","
                         << fmt(cell.u.imag()) << "," << fmt(cell.value.real())
                         << "," << fmt(cell.value.imag()) << ","
                         << fmt(cell.target.real()) << ","
                         << fmt(cell.target.imag()) << ","
                         << fmt(cell.abs_err) << "\n";
        } else if (selftest->parsed()) {
            return run_selftest();
        }
    } catch (const mkrein::NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mkrein::NonFiniteSample& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mkrein::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
