// Command-line front end: reproduces the eigenvalue, rate, outage, region
// and baseline experiments as CSV files with a JSON run manifest per output.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "capa/baselines.hpp"
#include "capa/metrics.hpp"
#include "capa/model.hpp"
#include "capa/monte_carlo.hpp"
#include "capa/pareto.hpp"
#include "capa/sensing.hpp"

#ifndef CAPA_GIT_DESCRIBE
#define CAPA_GIT_DESCRIBE "unknown"
#endif

namespace {

using capa::IsacModel;
using capa::SystemConfig;
using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct CommonOpts {
    std::string config_path;
    std::string out_prefix = "out";
    std::optional<double> snr_sense_db, snr_comm_db, tx_length, rx_length, gap;
    std::optional<double> rcs_power, target_rate;
    std::optional<int> frame_len, quadrature_order;
    std::optional<std::int64_t> samples;
    std::optional<std::uint64_t> seed;

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "config JSON (or env CAPA_CONFIG)");
        app->add_option("--out", out_prefix, "output file prefix");
        app->add_option("--snr-sense-db", snr_sense_db, "override sensing SNR [dB]");
        app->add_option("--snr-comm-db", snr_comm_db, "override communication SNR [dB]");
        app->add_option("--tx-length", tx_length, "override transmit aperture length [m]");
        app->add_option("--rx-length", rx_length, "override receive aperture length [m]");
        app->add_option("--gap", gap, "override aperture gap [m]");
        app->add_option("--frame-len", frame_len, "override frame length L");
        app->add_option("--rcs-power", rcs_power, "override mean RCS power");
        app->add_option("--target-rate", target_rate, "override outage target rate");
        app->add_option("--quadrature-order", quadrature_order, "override quadrature order T");
        app->add_option("--samples", samples, "override Monte Carlo sample count");
        app->add_option("--seed", seed, "override RNG seed");
    }

    SystemConfig resolve() const {
        std::string path = config_path;
        if (path.empty()) {
            if (const char* env = std::getenv("CAPA_CONFIG")) path = env;
        }
        if (path.empty())
            throw std::invalid_argument("no config: pass --config or set CAPA_CONFIG");
        SystemConfig cfg = capa::load_config(path);
        if (snr_sense_db) cfg.snr_sense = db_to_linear(*snr_sense_db);
        if (snr_comm_db) cfg.snr_comm = db_to_linear(*snr_comm_db);
        if (tx_length) cfg.tx_length = *tx_length;
        if (rx_length) cfg.rx_length = *rx_length;
        if (gap) cfg.gap = *gap;
        if (frame_len) cfg.frame_len = *frame_len;
        if (rcs_power) cfg.rcs_power = *rcs_power;
        if (target_rate) cfg.target_rate = *target_rate;
        if (quadrature_order) cfg.quadrature_order = *quadrature_order;
        if (samples) cfg.mc_samples = *samples;
        if (seed) cfg.seed = *seed;
        cfg.validate();
        return cfg;
    }
};

void write_manifest(const std::string& prefix, const std::string& subcommand,
                    const SystemConfig& cfg, const std::vector<std::string>& outputs) {
    json m;
    m["subcommand"] = subcommand;
    m["seed"] = cfg.seed;
    m["mc_samples"] = cfg.mc_samples;
    m["outputs"] = outputs;
    m["config"] = json::parse(capa::serialize_config(cfg));
    m["version"] = CAPA_GIT_DESCRIBE;
    const auto now = std::chrono::system_clock::now();
    m["timestamp_unix"] = std::chrono::duration_cast<std::chrono::seconds>(
                              now.time_since_epoch())
                              .count();
    std::ofstream out(prefix + ".manifest.json");
    out << m.dump(2) << "\n";
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

// ---------------------------------------------------------------- spectrum

int run_spectrum(const CommonOpts& opts) {
    const SystemConfig cfg = opts.resolve();
    const auto spec = capa::build_spectrum(cfg);
    const std::string path = opts.out_prefix + "_spectrum.csv";
    auto out = open_csv(path);
    out << "n,lambda_n,epsilon_n\n";
    for (int i = 0; i < spec.eigenvalues.size(); ++i)
        out << (i + 1) << "," << fmt(spec.eigenvalues(i)) << "," << fmt(spec.normalized(i))
            << "\n";
    write_manifest(opts.out_prefix, "spectrum", cfg, {path});
    std::cout << "wrote " << path << " (DoF=" << spec.dof
              << ", census@0.5=" << capa::polarization_census(spec, 0.5) << ")\n";
    return 0;
}

// --------------------------------------------------------------- gain-dist

int run_gain_dist(const CommonOpts& opts) {
    const SystemConfig cfg = opts.resolve();
    const IsacModel model = capa::build_model(cfg);

    const double hi = model.dist.mean() + 10.0 * model.lambdas(0);
    const int grid = 400;
    const std::string path = opts.out_prefix + "_gain_dist.csv";
    auto out = open_csv(path);
    out << "x,pdf,cdf\n";
    for (int i = 0; i <= grid; ++i) {
        const double x = hi * i / grid;
        out << fmt(x) << "," << fmt(model.dist.pdf(x)) << "," << fmt(model.dist.cdf(x)) << "\n";
    }

    const int bins = 80;
    std::vector<std::int64_t> counts(bins, 0);
    for (std::int64_t i = 0; i < cfg.mc_samples; ++i) {
        capa::CounterRng rng(cfg.seed, static_cast<std::uint64_t>(i));
        const auto f = capa::sample_realization(rng, model.lambdas, model.projections);
        const int b = static_cast<int>(f.g_c / hi * bins);
        if (b >= 0 && b < bins) ++counts[b];
    }
    const std::string hist_path = opts.out_prefix + "_gain_hist.csv";
    auto hout = open_csv(hist_path);
    hout << "bin_lo,bin_hi,density\n";
    for (int b = 0; b < bins; ++b) {
        const double lo = hi * b / bins, up = hi * (b + 1) / bins;
        const double density = counts[b] / (static_cast<double>(cfg.mc_samples) * (up - lo));
        hout << fmt(lo) << "," << fmt(up) << "," << fmt(density) << "\n";
    }
    write_manifest(opts.out_prefix, "gain-dist", cfg, {path, hist_path});
    std::cout << "wrote " << path << " and " << hist_path << "\n";
    return 0;
}

// ----------------------------------------------------------------- metrics

void metric_rows(std::ofstream& out, const std::string& lead, const IsacModel& m,
                 std::int64_t n_rate, std::int64_t n_op, std::uint64_t seed) {
    const auto sr = capa::sr_sc(m.cfg, m.gain_tx, m.gain_rx);
    out << lead << ",s-c,sr," << fmt(sr.value) << "," << fmt(sr.asymptote) << ",,\n";

    const auto ecr_s = capa::ecr_sc(m.cfg, m.gain_tx, m.xi);
    auto mc = capa::estimate(m, capa::McMetric::ecr_sc, n_rate, seed);
    out << lead << ",s-c,ecr," << fmt(ecr_s.value) << "," << fmt(ecr_s.asymptote) << ","
        << fmt(mc.mean) << "," << fmt(mc.stderr_val) << "\n";

    const auto op_s = capa::op_sc(m.cfg, m.gain_tx, m.xi);
    mc = capa::estimate(m, capa::McMetric::op_sc, n_op, seed + 1);
    out << lead << ",s-c,op," << fmt(op_s.value) << "," << fmt(op_s.asymptote) << ","
        << fmt(mc.mean) << "," << fmt(mc.stderr_val) << "\n";

    const auto ecr_c = capa::ecr_cc(m.dist, m.cfg.snr_comm);
    mc = capa::estimate(m, capa::McMetric::ecr_cc, n_rate, seed + 2);
    out << lead << ",c-c,ecr," << fmt(ecr_c.value) << "," << fmt(ecr_c.asymptote) << ","
        << fmt(mc.mean) << "," << fmt(mc.stderr_val) << "\n";

    const auto op_c = capa::op_cc(m.dist, m.cfg.snr_comm, m.cfg.target_rate);
    mc = capa::estimate(m, capa::McMetric::op_cc, n_op, seed + 3);
    out << lead << ",c-c,op," << fmt(op_c.value) << "," << fmt(op_c.asymptote) << ","
        << fmt(mc.mean) << "," << fmt(mc.stderr_val) << "\n";

    const auto sr_c = capa::avg_sr_cc(m);
    mc = capa::estimate(m, capa::McMetric::avg_sr_cc, n_rate, seed + 4);
    out << lead << ",c-c,sr," << fmt(sr_c.value) << "," << fmt(sr_c.asymptote) << ","
        << fmt(mc.mean) << "," << fmt(mc.stderr_val) << "\n";
}

int run_metrics(const CommonOpts& opts, const std::string& sweep, double from, double to,
                int points) {
    const SystemConfig cfg = opts.resolve();
    const IsacModel base = capa::build_model(cfg);
    const std::int64_t n_rate = cfg.mc_samples;
    const std::int64_t n_op = cfg.mc_samples;

    const std::string path = opts.out_prefix + "_metrics.csv";
    auto out = open_csv(path);
    if (sweep == "snr") {
        out << "snr_db,design,metric,exact,asymptote,mc_mean,mc_stderr\n";
        for (int i = 0; i < points; ++i) {
            const double db = points == 1 ? from : from + (to - from) * i / (points - 1);
            const double lin = db_to_linear(db);
            const IsacModel m = capa::with_snr(base, lin, lin);
            metric_rows(out, fmt(db), m, n_rate, n_op, cfg.seed + 100 * i);
        }
    } else if (sweep == "aperture") {
        out << "lt_over_lambda,design,metric,exact,asymptote,mc_mean,mc_stderr\n";
        for (int i = 0; i < points; ++i) {
            const double lt_lam = points == 1 ? from : from + (to - from) * i / (points - 1);
            const IsacModel m = capa::with_tx_length(base, lt_lam * cfg.wavelength);
            metric_rows(out, fmt(lt_lam), m, n_rate, n_op, cfg.seed + 100 * i);
        }
    } else {
        throw std::invalid_argument("unknown sweep kind: " + sweep);
    }
    write_manifest(opts.out_prefix, "metrics", cfg, {path});
    std::cout << "wrote " << path << "\n";
    return 0;
}

// ------------------------------------------------------------------ pareto

int run_pareto(const CommonOpts& opts, int tau_points, double spda_spacing_lambda) {
    const SystemConfig cfg = opts.resolve();
    const IsacModel model = capa::build_model(cfg);
    std::vector<double> taus(tau_points);
    for (int i = 0; i < tau_points; ++i) taus[i] = static_cast<double>(i) / (tau_points - 1);

    const std::int64_t n_mc = std::min<std::int64_t>(cfg.mc_samples, 20000);
    const std::string path = opts.out_prefix + "_region.csv";
    auto out = open_csv(path);
    out << "tau,sr,cr,scheme\n";
    for (const auto& p : capa::region_sweep(model, taus, n_mc, cfg.seed))
        out << fmt(p.tau) << "," << fmt(p.sr) << "," << fmt(p.cr) << ",capa-isac\n";
    for (const auto& p : capa::fdsac_region(model, 41))
        out << fmt(p.tau) << "," << fmt(p.sr) << "," << fmt(p.cr) << ",fdsac\n";
    const auto spda = capa::build_spda(cfg, spda_spacing_lambda * cfg.wavelength);
    for (const auto& p : capa::spda_region(spda, taus, n_mc, cfg.seed))
        out << fmt(p.tau) << "," << fmt(p.sr) << "," << fmt(p.cr) << ",spda-isac\n";
    write_manifest(opts.out_prefix, "pareto", cfg, {path});
    std::cout << "wrote " << path << "\n";
    return 0;
}

// --------------------------------------------------------------- baselines

int run_baselines(const CommonOpts& opts, double from, double to, int points,
                  std::vector<double> ds_lambda) {
    const SystemConfig cfg = opts.resolve();
    const IsacModel base = capa::build_model(cfg);
    const std::string path = opts.out_prefix + "_baselines.csv";
    auto out = open_csv(path);
    out << "snr_db,scheme,design,metric,exact,asymptote,mc_mean,mc_stderr\n";
    for (int i = 0; i < points; ++i) {
        const double db = points == 1 ? from : from + (to - from) * i / (points - 1);
        const double lin = db_to_linear(db);
        SystemConfig c = cfg;
        c.snr_sense = lin;
        c.snr_comm = lin;

        const IsacModel m = capa::with_snr(base, lin, lin);
        const auto fd = capa::fdsac_rates(m, 0.5, 0.5);
        out << fmt(db) << ",fdsac,s-c,sr," << fmt(fd.sr) << ",,,\n";
        out << fmt(db) << ",fdsac,c-c,ecr," << fmt(fd.ecr) << ",,,\n";

        for (double dsl : ds_lambda) {
            const auto spda = capa::build_spda(c, dsl * cfg.wavelength);
            const auto r = capa::spda_rates(spda);
            const std::string scheme = "spda-" + std::to_string(dsl).substr(0, 5);
            out << fmt(db) << "," << scheme << ",s-c,sr," << fmt(r.sr_sc) << ",,,\n";
            out << fmt(db) << "," << scheme << ",s-c,ecr," << fmt(r.ecr_sc) << ",,,\n";
            out << fmt(db) << "," << scheme << ",s-c,op," << fmt(r.op_sc) << ",,,\n";
            out << fmt(db) << "," << scheme << ",c-c,ecr," << fmt(r.ecr_cc) << ",,,\n";
            out << fmt(db) << "," << scheme << ",c-c,op," << fmt(r.op_cc) << ",,,\n";
            out << fmt(db) << "," << scheme << ",c-c,sr," << fmt(r.avg_sr_cc) << ",,,\n";
        }
    }
    write_manifest(opts.out_prefix, "baselines", cfg, {path});
    std::cout << "wrote " << path << "\n";
    return 0;
}

// ---------------------------------------------------------------- validate

struct CheckTable {
    int failures = 0;
    void row(const std::string& name, bool pass, const std::string& detail) {
        std::printf("[%s] %-44s %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
        if (!pass) ++failures;
    }
};

int run_validate(const CommonOpts& opts) {
    const SystemConfig cfg = opts.resolve();
    const IsacModel m = capa::build_model(cfg);
    const std::int64_t n = cfg.mc_samples;
    CheckTable t;

    {
        const double trace = m.spectrum.eigenvalues.sum();
        t.row("trace sum(lambda) = L_t (0.1%)",
              std::abs(trace - cfg.tx_length) < 1e-3 * cfg.tx_length,
              "trace=" + fmt(trace));
        t.row("eps_1 <= 1 + 1e-6", m.spectrum.normalized(0) <= 1.0 + 1e-6,
              "eps1=" + fmt(m.spectrum.normalized(0)));
    }
    {
        const auto est = capa::estimate(m, capa::McMetric::mean_gain, n, cfg.seed);
        const double target = m.dist.mean();
        t.row("E[g_c] = sum(lambda_retained) (3 s.e.)",
              std::abs(est.mean - target) <= 3.0 * est.stderr_val,
              "mc=" + fmt(est.mean) + " exact=" + fmt(target));
    }
    {
        const auto est = capa::estimate(m, capa::McMetric::mean_rho_sq, n, cfg.seed + 1);
        double xi_ret = 0.0;
        for (int i = 0; i < m.lambdas.size(); ++i)
            xi_ret += m.lambdas(i) * std::norm(m.projections(i));
        t.row("E[|rho|^2] = Xi_retained (3 s.e.)",
              std::abs(est.mean - xi_ret) <= 3.0 * est.stderr_val,
              "mc=" + fmt(est.mean) + " exact=" + fmt(xi_ret));
    }
    {
        // KS distance between the analytic CDF and the empirical gain CDF.
        std::vector<double> g(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i) {
            capa::CounterRng rng(cfg.seed + 2, static_cast<std::uint64_t>(i));
            g[static_cast<std::size_t>(i)] =
                capa::sample_realization(rng, m.lambdas, m.projections).g_c;
        }
        std::sort(g.begin(), g.end());
        double ks = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double F = m.dist.cdf(g[i]);
            ks = std::max(ks, std::max(F - static_cast<double>(i) / n,
                                       static_cast<double>(i + 1) / n - F));
        }
        t.row("KS(analytic, empirical) < 0.01", ks < 0.01, "ks=" + fmt(ks));
    }
    {
        const auto exact = capa::ecr_sc(cfg, m.gain_tx, m.xi);
        const auto mc = capa::estimate(m, capa::McMetric::ecr_sc, n, cfg.seed + 3);
        t.row("S-C ECR closed form vs MC (3 s.e.)",
              std::abs(exact.value - mc.mean) <= 3.0 * mc.stderr_val,
              "exact=" + fmt(exact.value) + " mc=" + fmt(mc.mean));
    }
    {
        const auto exact = capa::op_sc(cfg, m.gain_tx, m.xi);
        const auto mc = capa::estimate(m, capa::McMetric::op_sc, 10 * n, cfg.seed + 4);
        const double tol = 3.0 * std::max(mc.stderr_val, mc.wilson_half / 1.96);
        t.row("S-C OP closed form vs MC (3 s.e.)", std::abs(exact.value - mc.mean) <= tol,
              "exact=" + fmt(exact.value) + " mc=" + fmt(mc.mean));
    }
    {
        const auto exact = capa::ecr_cc(m.dist, cfg.snr_comm);
        const auto mc = capa::estimate(m, capa::McMetric::ecr_cc, n, cfg.seed + 5);
        t.row("C-C ECR closed form vs MC (3 s.e.)",
              std::abs(exact.value - mc.mean) <= 3.0 * mc.stderr_val,
              "exact=" + fmt(exact.value) + " mc=" + fmt(mc.mean));
    }
    {
        const auto exact = capa::op_cc(m.dist, cfg.snr_comm, cfg.target_rate);
        const auto mc = capa::estimate(m, capa::McMetric::op_cc, 10 * n, cfg.seed + 6);
        const double tol = 3.0 * std::max(mc.stderr_val, mc.wilson_half / 1.96);
        t.row("C-C OP closed form vs MC (3 s.e.)", std::abs(exact.value - mc.mean) <= tol,
              "exact=" + fmt(exact.value) + " mc=" + fmt(mc.mean));
    }
    {
        const auto exact = capa::avg_sr_cc(m);
        const auto mc = capa::estimate(m, capa::McMetric::avg_sr_cc, n, cfg.seed + 7);
        t.row("C-C avg SR closed form vs MC (3 s.e.)",
              std::abs(exact.value - mc.mean) <= 3.0 * mc.stderr_val,
              "exact=" + fmt(exact.value) + " mc=" + fmt(mc.mean));
    }
    {
        // Pareto closed form vs grid oracle on a few realizations.
        bool ok = true;
        double worst = 0.0;
        for (int r = 0; r < 10 && ok; ++r) {
            capa::CounterRng rng(cfg.seed + 8, static_cast<std::uint64_t>(r));
            const auto f = capa::sample_realization(rng, m.lambdas, m.projections);
            const auto rep = capa::subspace_rep(f, m.gain_tx);
            const capa::ParetoOracle oracle(rep, 400);
            for (int i = 0; i <= 20; ++i) {
                const double tau = i / 20.0;
                const double cf = capa::pareto_weights(rep, tau).objective;
                const double oc = oracle.best(tau);
                worst = std::max(worst, (oc - cf) / std::max(oc, 1e-300));
                if (cf < oc * (1.0 - 1e-3)) ok = false;
            }
        }
        t.row("Pareto closed form >= grid oracle - 1e-3", ok, "worst_gap=" + fmt(worst));
    }
    {
        const auto ecr_fn = [&](double snr) {
            return capa::ecr_sc(capa::with_snr(m, snr, snr).cfg, m.gain_tx, m.xi).value;
        };
        const double s = capa::slope_estimator(ecr_fn, 1e6, 1e8);
        t.row("S-C ECR high-SNR slope = 1 (0.02)", std::abs(s - 1.0) <= 0.02, "slope=" + fmt(s));
    }

    std::printf("%d check(s) failed\n", t.failures);
    return t.failures == 0 ? 0 : 1;
}

json error_json(const std::string& kind, const std::string& message) {
    json e;
    e["error"] = {{"kind", kind}, {"message", message}};
    return e;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuous-aperture ISAC performance toolkit"};
    app.require_subcommand(1);

    CommonOpts spectrum_opts, gain_opts, metrics_opts, pareto_opts, baselines_opts,
        validate_opts;

    auto* sc_spectrum = app.add_subcommand("spectrum", "kernel eigenvalue table (CSV)");
    spectrum_opts.attach(sc_spectrum);

    auto* sc_gain = app.add_subcommand("gain-dist", "channel gain pdf/cdf and histogram");
    gain_opts.attach(sc_gain);

    auto* sc_metrics = app.add_subcommand("metrics", "closed forms vs Monte Carlo sweeps");
    metrics_opts.attach(sc_metrics);
    std::string sweep = "snr";
    double mfrom = 10.0, mto = 50.0;
    int mpoints = 5;
    sc_metrics->add_option("--sweep", sweep, "snr | aperture");
    sc_metrics->add_option("--from", mfrom, "sweep start (dB or L_t/lambda)");
    sc_metrics->add_option("--to", mto, "sweep end");
    sc_metrics->add_option("--points", mpoints, "sweep points");

    auto* sc_pareto = app.add_subcommand("pareto", "SR-CR region boundaries (CSV)");
    pareto_opts.attach(sc_pareto);
    int tau_points = 101;
    double region_ds = 1.0;
    sc_pareto->add_option("--tau-points", tau_points, "trade-off grid size");
    sc_pareto->add_option("--spda-spacing", region_ds, "SPDA spacing in wavelengths");

    auto* sc_base = app.add_subcommand("baselines", "SPDA and FDSAC comparison sweeps");
    baselines_opts.attach(sc_base);
    double bfrom = 10.0, bto = 50.0;
    int bpoints = 5;
    std::vector<double> ds_lambda{0.5, 1.0};
    sc_base->add_option("--from", bfrom, "sweep start [dB]");
    sc_base->add_option("--to", bto, "sweep end [dB]");
    sc_base->add_option("--points", bpoints, "sweep points");
    sc_base->add_option("--ds-lambda", ds_lambda, "SPDA spacings in wavelengths");

    auto* sc_validate = app.add_subcommand("validate", "closed-form vs MC oracle suite");
    validate_opts.attach(sc_validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << error_json("usage", e.what()).dump() << "\n";
        return 2;
    }

    try {
        if (sc_spectrum->parsed()) return run_spectrum(spectrum_opts);
        if (sc_gain->parsed()) return run_gain_dist(gain_opts);
        if (sc_metrics->parsed()) return run_metrics(metrics_opts, sweep, mfrom, mto, mpoints);
        if (sc_pareto->parsed()) return run_pareto(pareto_opts, tau_points, region_ds);
        if (sc_base->parsed()) return run_baselines(baselines_opts, bfrom, bto, bpoints, ds_lambda);
        if (sc_validate->parsed()) return run_validate(validate_opts);
    } catch (const std::invalid_argument& e) {
        std::cerr << error_json("config", e.what()).dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << error_json("runtime", e.what()).dump() << "\n";
        return 1;
    }
    return 2;
}
