#include "capa/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "capa/metrics.hpp"
#include "capa/sensing.hpp"
#include "capa/special_functions.hpp"

namespace capa {

namespace {
const double kLn2 = std::numbers::ln2;

// E[ln(1 + snr * sum_n lambda_n |Psi_n|^2)] by the Frullani route:
// integral of (e^{-t}/t)(1 - prod_n (1 + snr lambda_n t)^{-1}) dt.
// Integrated in the log domain (t = e^u), which resolves the 1/t ramp
// between 1/(snr lambda_max) and O(1) for arbitrarily spread eigenvalue
// sets and SNRs.
double mean_log1p_integral(const Eigen::VectorXd& lambdas, double snr) {
    const int n = static_cast<int>(lambdas.size());
    const double scale = snr * lambdas.sum();
    if (!(scale > 0.0)) return 0.0;
    const auto g = [&](double u) -> double {
        const double t = std::exp(u);
        double prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= 1.0 + snr * lambdas(i) * t;
        return std::exp(-t) * (1.0 - 1.0 / prod);
    };
    const double u_lo = std::log(1e-18 / scale);
    const double u_hi = std::log(50.0);
    const int panels = 8000;  // composite Simpson; integrand is analytic
    const double h = (u_hi - u_lo) / panels;
    double acc = g(u_lo) + g(u_hi), acc4 = 0.0, acc2 = 0.0;
    for (int i = 1; i < panels; ++i) (i % 2 ? acc4 : acc2) += g(u_lo + i * h);
    return h / 3.0 * (acc + 4.0 * acc4 + 2.0 * acc2);
}

}  // namespace

FdsacRates fdsac_rates(const IsacModel& model, double kappa, double iota) {
    if (!(kappa >= 0.0 && kappa <= 1.0 && iota >= 0.0 && iota <= 1.0))
        throw std::invalid_argument("fdsac fractions must lie in [0, 1]");
    const SystemConfig& cfg = model.cfg;
    FdsacRates out;

    if (kappa > 0.0) {
        const double arg = (iota / kappa) * cfg.snr_sense * cfg.frame_len * cfg.rcs_power *
                           model.gain_rx * model.gain_tx;
        out.sr = kappa / cfg.frame_len * std::log2(1.0 + arg);
    }
    if (kappa < 1.0 && iota < 1.0) {
        const double snr = (1.0 - iota) / (1.0 - kappa) * cfg.snr_comm;
        out.ecr = (1.0 - kappa) * ecr_cc(model.dist, snr).value;
    }
    return out;
}

std::vector<RegionPoint> fdsac_region(const IsacModel& model, int grid) {
    if (grid < 2) throw std::invalid_argument("fdsac_region grid must be >= 2");
    std::vector<RegionPoint> pts;
    for (int i = 0; i < grid; ++i) {
        const double kappa = static_cast<double>(i) / (grid - 1);
        for (int j = 0; j < grid; ++j) {
            const double iota = static_cast<double>(j) / (grid - 1);
            const FdsacRates r = fdsac_rates(model, kappa, iota);
            pts.push_back({kappa, r.sr, r.ecr});
        }
    }
    // Pareto filter on (sr, cr).
    std::sort(pts.begin(), pts.end(), [](const RegionPoint& a, const RegionPoint& b) {
        return a.sr > b.sr;
    });
    std::vector<RegionPoint> hull;
    double best_cr = -1.0;
    for (const auto& p : pts) {
        if (p.cr > best_cr) {
            hull.push_back(p);
            best_cr = p.cr;
        }
    }
    return hull;
}

SpdaGeometry spda_geometry(const SystemConfig& cfg, double spacing) {
    if (!(spacing > 0.0)) throw std::invalid_argument("spda spacing must be positive");
    SpdaGeometry geo;
    geo.spacing = spacing;
    geo.element_len = std::sqrt(cfg.wavelength * cfg.wavelength / (4.0 * std::numbers::pi));
    geo.weight = std::min(geo.element_len, spacing);

    const auto fill = [&](const ApertureInterval& iv, std::vector<double>& centers) {
        const double usable = iv.length() - geo.element_len;
        if (usable < 0.0)
            throw std::invalid_argument("spda: no element fits inside the aperture");
        const int count = static_cast<int>(std::floor(usable / spacing)) + 1;
        centers.resize(count);
        for (int i = 0; i < count; ++i)
            centers[i] = iv.lo + geo.element_len / 2.0 + i * spacing;
    };
    fill(tx_interval(cfg), geo.tx_centers);
    fill(rx_interval(cfg), geo.rx_centers);
    return geo;
}

SpdaModel build_spda(const SystemConfig& cfg, double spacing) {
    cfg.validate();
    SpdaModel m;
    m.cfg = cfg;
    m.geometry = spda_geometry(cfg, spacing);
    const double k0 = cfg.wavenumber();
    const double w = m.geometry.weight;
    const int nt = static_cast<int>(m.geometry.tx_centers.size());

    m.hs_tx.resize(nt);
    m.gain_tx = 0.0;
    for (int i = 0; i < nt; ++i) {
        m.hs_tx(i) = h_s_eval(m.geometry.tx_centers[i], cfg.target_pos, k0);
        m.gain_tx += w * std::norm(m.hs_tx(i));
    }
    m.gain_rx = 0.0;
    for (double z : m.geometry.rx_centers)
        m.gain_rx += w * std::norm(h_s_eval(z, cfg.target_pos, k0));

    Eigen::MatrixXd R(nt, nt);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j <= i; ++j) {
            const double v = sinc_kernel(m.geometry.tx_centers[i], m.geometry.tx_centers[j], k0);
            R(i, j) = v;
            R(j, i) = v;
        }
    m.xi = w * w * (m.hs_tx.adjoint() * (R * m.hs_tx)).real()(0);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R);
    if (es.info() != Eigen::Success) throw std::runtime_error("spda covariance eigensolve failed");
    const Eigen::VectorXd ev = es.eigenvalues().reverse().cwiseMax(0.0);
    m.sqrt_cov = (es.eigenvectors().rowwise().reverse() *
                  ev.array().sqrt().matrix().asDiagonal())
                     .cast<std::complex<double>>();
    m.gain_eigs = w * ev;
    return m;
}

FadingRealization SpdaModel::sample(CounterRng& rng) const {
    const int n = static_cast<int>(geometry.tx_centers.size());
    Eigen::VectorXcd xi_draw(n);
    for (int i = 0; i < n; ++i) xi_draw(i) = rng.complex_gaussian();
    const Eigen::VectorXcd h = sqrt_cov * xi_draw;
    FadingRealization out;
    out.psi = std::move(xi_draw);
    out.g_c = geometry.weight * h.squaredNorm();
    out.rho = geometry.weight * (h.array() * hs_tx.conjugate().array()).sum();
    return out;
}

SpdaRates spda_rates(const SpdaModel& spda) {
    const SystemConfig& cfg = spda.cfg;
    SpdaRates out;
    out.sr_sc = sr_sc(cfg, spda.gain_tx, spda.gain_rx).value;
    out.ecr_sc = ecr_sc(cfg, spda.gain_tx, spda.xi).value;
    out.op_sc = op_sc(cfg, spda.gain_tx, spda.xi).value;

    // Numeric-rank eigenvalues of the weighted covariance carry the law of
    // the element-summed gain.
    const Eigen::VectorXd& ev = spda.gain_eigs;
    const int rank = static_cast<int>((ev.array() >= 1e-12 * ev(0)).count());
    const Eigen::VectorXd kept = ev.head(rank);
    out.ecr_cc = mean_log1p_integral(kept, cfg.snr_comm) / kLn2;

    // Outage law through the Gamma-mixture series needs a bounded
    // eigenvalue spread; an effective-rank cutoff supplies it.
    const int op_rank = static_cast<int>((ev.array() >= 0.01 * ev(0)).count());
    GainDistribution op_dist(ev.head(op_rank));
    out.op_cc = op_cc(op_dist, cfg.snr_comm, cfg.target_rate).value;

    // Average C-C sensing rate: rank-one update exactly as in the CAPA case.
    const double scale = cfg.frame_len * cfg.rcs_power * cfg.snr_sense * spda.gain_rx;
    const double w = spda.geometry.weight;
    Eigen::MatrixXcd S = spda.sqrt_cov;
    Eigen::MatrixXcd inner = w * S.adjoint() * S;
    const Eigen::VectorXcd proj = w * S.adjoint() * spda.hs_tx;
    inner += scale * proj * proj.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(inner);
    Eigen::VectorXd nu = es.eigenvalues().reverse().cwiseMax(0.0).head(rank);
    out.avg_sr_cc = (hypoexp_mean_log(nu) - hypoexp_mean_log(kept)) * std::numbers::log2e /
                    cfg.frame_len;
    return out;
}

std::vector<RegionPoint> spda_region(const SpdaModel& spda, const std::vector<double>& taus,
                                     std::int64_t n_mc, std::uint64_t seed) {
    const SystemConfig& cfg = spda.cfg;
    const double sscale = cfg.frame_len * cfg.rcs_power * cfg.snr_sense * spda.gain_rx;
    std::vector<RegionPoint> out;
    out.reserve(taus.size());
    for (double tau : taus) {
        double sr_acc = 0.0, cr_acc = 0.0;
        for (std::int64_t i = 0; i < n_mc; ++i) {
            CounterRng rng(seed, static_cast<std::uint64_t>(i));
            const FadingRealization f = spda.sample(rng);
            const SubspaceRep rep = subspace_rep(f, spda.gain_tx);
            const ParetoPoint p = pareto_weights(rep, tau);
            sr_acc += std::log2(1.0 + sscale * p.ups_s) / cfg.frame_len;
            cr_acc += std::log2(1.0 + cfg.snr_comm * p.ups_c);
        }
        out.push_back({tau, sr_acc / n_mc, cr_acc / n_mc});
    }
    return out;
}

}  // namespace capa
