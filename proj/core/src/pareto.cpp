#include "capa/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace capa {

double SubspaceRep::tau_lo() const {
    const double r2 = std::norm(rho);
    return r2 / (r2 + g_c * g_c);
}

double SubspaceRep::tau_hi() const {
    const double r2 = std::norm(rho);
    return gain_tx * gain_tx / (gain_tx * gain_tx + r2);
}

SubspaceRep subspace_rep(const FadingRealization& realization, double gain_tx) {
    if (!(realization.g_c > 0.0)) throw std::invalid_argument("subspace_rep requires g_c > 0");
    SubspaceRep rep{gain_tx, realization.g_c, realization.rho};
    if (std::norm(rep.rho) > rep.gain_tx * rep.g_c * (1.0 + 1e-9))
        throw std::invalid_argument("subspace_rep: Cauchy-Schwarz violated");
    return rep;
}

ParetoPoint pareto_weights(const SubspaceRep& rep, double tau) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in [0, 1]");
    const double r = std::abs(rep.rho);
    ParetoPoint p;
    p.tau = tau;
    if (tau <= rep.tau_lo()) {
        // w = hc*/sqrt(g_c): the C-C beamformer.
        p.branch = ParetoBranch::comm;
        p.ups_s = r * r / rep.g_c;
        p.ups_c = rep.g_c;
    } else if (tau >= rep.tau_hi()) {
        // w = hs*/sqrt(G_t): the S-C beamformer.
        p.branch = ParetoBranch::sense;
        p.ups_s = rep.gain_tx;
        p.ups_c = r * r / rep.gain_tx;
    } else {
        p.branch = ParetoBranch::interior;
        const double st = std::sqrt(tau), su = std::sqrt(1.0 - tau);
        const double delta = (1.0 - tau) * rep.gain_tx + tau * rep.g_c - 2.0 * st * su * r;
        if (!(delta > 0.0))
            throw std::runtime_error("pareto_weights: degenerate interior denominator");
        p.eps1 = (st * rep.g_c - su * r) / delta;
        p.eps2 = (su * rep.gain_tx - st * r) / delta;
        p.varsigma = std::sqrt(p.eps1 * p.eps1 * rep.gain_tx + p.eps2 * p.eps2 * rep.g_c +
                               2.0 * p.eps1 * p.eps2 * r);
        // The e^{-j angle(rho)} phase on the hc* component makes both channel
        // projections combine coherently; only magnitudes remain.
        const double as = (p.eps1 * rep.gain_tx + p.eps2 * r) / p.varsigma;
        const double ac = (p.eps1 * r + p.eps2 * rep.g_c) / p.varsigma;
        p.ups_s = as * as;
        p.ups_c = ac * ac;
    }
    if (tau <= 0.0)
        p.objective = p.ups_c;
    else if (tau >= 1.0)
        p.objective = p.ups_s;
    else
        p.objective = std::min(p.ups_s / tau, p.ups_c / (1.0 - tau));
    return p;
}

namespace {

// Explicit 2-D coordinates with hs* along the first basis function:
// s = (sqrt(G_t), 0), c = (rho*/sqrt(G_t), sqrt(g_c - |rho|^2/G_t)).
struct Coords {
    Eigen::Vector2cd s, c;
};

Coords make_coords(const SubspaceRep& rep) {
    Coords co;
    co.s << std::sqrt(rep.gain_tx), 0.0;
    const double ortho = std::max(rep.g_c - std::norm(rep.rho) / rep.gain_tx, 0.0);
    co.c << std::conj(rep.rho) / std::sqrt(rep.gain_tx), std::sqrt(ortho);
    return co;
}

// In these coordinates the hs* and hc* component vectors are s and c
// themselves; the rho-phase factor on the hc* component makes both channel
// projections coherent (and keeps w continuous across the branch joins).
Eigen::Vector2cd beamformer_coords(const SubspaceRep& rep, const ParetoPoint& p,
                                   const Coords& co) {
    const double phase = std::abs(rep.rho) > 0.0 ? std::arg(rep.rho) : 0.0;
    const std::complex<double> rot = std::polar(1.0, phase);
    switch (p.branch) {
        case ParetoBranch::comm:
            return rot * co.c / std::sqrt(rep.g_c);
        case ParetoBranch::sense:
            return co.s / std::sqrt(rep.gain_tx);
        case ParetoBranch::interior:
        default:
            return (p.eps1 * co.s + p.eps2 * rot * co.c) / p.varsigma;
    }
}

}  // namespace

KktDiagnostics kkt_diagnostics(const SubspaceRep& rep, double tau) {
    const ParetoPoint p = pareto_weights(rep, tau);
    const double r = std::abs(rep.rho);
    const double st = std::sqrt(tau), su = std::sqrt(1.0 - tau);
    const double delta = (1.0 - tau) * rep.gain_tx + tau * rep.g_c - 2.0 * st * su * r;

    KktDiagnostics d;
    d.mu1 = (rep.g_c - (su / st) * r) / delta;
    d.mu2 = (rep.gain_tx - (st / su) * r) / delta;

    const Coords co = make_coords(rep);
    const Eigen::Vector2cd w = beamformer_coords(rep, p, co);
    d.norm_w = w.norm();

    // Projections are conjugated inner products in these coordinates:
    // int hs w dt = s^H w, int hc w dt = c^H w.
    const std::complex<double> ps = co.s.dot(w);
    const std::complex<double> pc = co.c.dot(w);
    d.nu = d.mu1 * std::norm(ps) + d.mu2 * std::norm(pc);
    const Eigen::Vector2cd resid = d.mu1 * co.s * ps + d.mu2 * co.c * pc - d.nu * w;
    d.residual = resid.norm();
    return d;
}

double pareto_oracle(const SubspaceRep& rep, double tau, int grid_n) {
    return ParetoOracle(rep, grid_n).best(tau);
}

ParetoOracle::ParetoOracle(const SubspaceRep& rep, int grid_n) {
    if (grid_n < 2) throw std::invalid_argument("pareto oracle grid must have >= 2 points");
    const Coords co = make_coords(rep);
    // w = cos(theta) u1 + e^{j phi} sin(theta) u2 over the unit sphere.
    std::vector<std::pair<double, double>> pts;
    pts.reserve(static_cast<std::size_t>(grid_n) * grid_n);
    for (int i = 0; i < grid_n; ++i) {
        const double theta = (std::numbers::pi / 2.0) * i / (grid_n - 1);
        const double ct = std::cos(theta), st = std::sin(theta);
        // Projections split into a fixed part and a phase-rotating part.
        const std::complex<double> s_fix = std::conj(co.s(0)) * ct;
        const std::complex<double> s_rot = std::conj(co.s(1)) * st;
        const std::complex<double> c_fix = std::conj(co.c(0)) * ct;
        const std::complex<double> c_rot = std::conj(co.c(1)) * st;
        for (int j = 0; j < grid_n; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / grid_n;
            const std::complex<double> e = std::polar(1.0, phi);
            pts.emplace_back(std::norm(s_fix + e * s_rot), std::norm(c_fix + e * c_rot));
        }
    }
    // Pareto filter: sort by ups_s descending, keep strictly rising ups_c.
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    double best_c = -1.0;
    for (const auto& pt : pts) {
        if (pt.second > best_c) {
            frontier_.push_back(pt);
            best_c = pt.second;
        }
    }
}

double ParetoOracle::best(double tau) const {
    double best = 0.0;
    for (const auto& [us, uc] : frontier_) {
        double val;
        if (tau <= 0.0)
            val = uc;
        else if (tau >= 1.0)
            val = us;
        else
            val = std::min(us / tau, uc / (1.0 - tau));
        best = std::max(best, val);
    }
    return best;
}

double sensing_rate(const IsacModel& model, double ups_s) {
    return std::log2(1.0 + model.sensing_scale() * ups_s) / model.cfg.frame_len;
}

double comm_rate(const IsacModel& model, double ups_c) {
    return std::log2(1.0 + model.cfg.snr_comm * ups_c);
}

std::vector<RegionPoint> region_sweep(const IsacModel& model, const std::vector<double>& taus,
                                      std::int64_t n_mc, std::uint64_t seed) {
    std::vector<RegionPoint> out;
    out.reserve(taus.size());
    for (double tau : taus) {
        double sr_acc = 0.0, cr_acc = 0.0;
        for (std::int64_t i = 0; i < n_mc; ++i) {
            CounterRng rng(seed, static_cast<std::uint64_t>(i));
            const FadingRealization f = sample_realization(rng, model.lambdas, model.projections);
            const SubspaceRep rep = subspace_rep(f, model.gain_tx);
            const ParetoPoint p = pareto_weights(rep, tau);
            sr_acc += sensing_rate(model, p.ups_s);
            cr_acc += comm_rate(model, p.ups_c);
        }
        out.push_back({tau, sr_acc / n_mc, cr_acc / n_mc});
    }
    return out;
}

}  // namespace capa
