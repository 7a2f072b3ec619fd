#include "capa/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "capa/special_functions.hpp"

namespace capa {

namespace {
const double kLog2e = std::numbers::log2e;
const double kLn2 = std::numbers::ln2;
}  // namespace

MetricReport sr_sc(const SystemConfig& cfg, double gain_tx, double gain_rx) {
    if (!(gain_tx > 0.0 && gain_rx > 0.0))
        throw std::invalid_argument("sr_sc requires positive aperture gains");
    const double arg = cfg.snr_sense * cfg.frame_len * cfg.rcs_power * gain_rx * gain_tx;
    MetricReport r;
    r.value = std::log2(1.0 + arg) / cfg.frame_len;
    r.asymptote = std::log2(arg) / cfg.frame_len;
    return r;
}

MetricReport ecr_sc(const SystemConfig& cfg, double gain_tx, double xi) {
    if (!(xi > 0.0)) throw std::invalid_argument("ecr_sc requires Xi > 0");
    const double a = gain_tx / (cfg.snr_comm * xi);
    MetricReport r;
    // -(1/ln2) e^a Ei(-a); for large a use the first term of log_expectation_terms
    // to dodge e^a overflow (same quantity, J_0 = -e^a Ei(-a)).
    if (a <= 25.0) {
        r.value = -std::exp(a) * expint_ei(-a) / kLn2;
    } else {
        r.value = log_expectation_terms(a, 0)[0] / kLn2;
    }
    r.asymptote = std::log2(cfg.snr_comm) - std::log2(gain_tx / xi) - kEulerGamma / kLn2;
    return r;
}

MetricReport op_sc(const SystemConfig& cfg, double gain_tx, double xi) {
    if (!(xi > 0.0)) throw std::invalid_argument("op_sc requires Xi > 0");
    const double a = gain_tx / (cfg.snr_comm * xi);
    const double x = a * (std::exp2(cfg.target_rate) - 1.0);
    MetricReport r;
    r.value = -std::expm1(-x);
    r.asymptote = x;
    return r;
}

MetricReport ecr_cc(const GainDistribution& dist, double snr_comm) {
    if (!(snr_comm > 0.0)) throw std::invalid_argument("ecr_cc requires positive SNR");
    const int n = static_cast<int>(dist.lambdas().size());
    const auto& w = dist.mixture_weights();
    const double a = 1.0 / (snr_comm * dist.lambda_min());
    const auto J = log_expectation_terms(a, n + static_cast<int>(w.size()) - 1);
    // E[ln(1+snr X_{N+m})] is the prefix sum of J up to N+m-1.
    double prefix = 0.0;
    for (int k = 0; k < n - 1; ++k) prefix += J[k];
    double acc = 0.0;
    for (std::size_t m = 0; m < w.size(); ++m) {
        prefix += J[n - 1 + m];
        acc += w[m] * prefix;
    }
    MetricReport r;
    r.value = acc / kLn2;
    r.asymptote = std::log2(snr_comm) + dist.mean_log() * kLog2e;
    return r;
}

MetricReport op_cc(const GainDistribution& dist, double snr_comm, double target_rate) {
    if (!(snr_comm > 0.0)) throw std::invalid_argument("op_cc requires positive SNR");
    if (!(target_rate >= 0.0)) throw std::invalid_argument("op_cc requires R0 >= 0");
    const double x0 = (std::exp2(target_rate) - 1.0) / snr_comm;
    MetricReport r;
    r.value = dist.cdf(x0);
    const int n = static_cast<int>(dist.lambdas().size());
    // (2^R0-1)^N / (snr^N N! prod lambda), in the log domain.
    const double lx = n * std::log(std::max(x0, 1e-300)) - std::lgamma(n + 1.0) -
                      dist.lambdas().array().log().sum();
    r.asymptote = std::exp(lx);
    if (target_rate == 0.0) {
        r.value = 0.0;
        r.asymptote = 0.0;
    }
    return r;
}

MetricReport avg_sr_cc(const IsacModel& model) {
    const double mean_log_q = hypoexp_mean_log(model.q.nu);
    const double mean_log_g = hypoexp_mean_log(model.lambdas);
    MetricReport r;
    r.value = (mean_log_q - mean_log_g) * kLog2e / model.cfg.frame_len;
    const double lead = std::log2(model.cfg.snr_sense) +
                        std::log2(model.cfg.frame_len * model.cfg.rcs_power * model.gain_rx *
                                  model.xi) -
                        kEulerGamma / kLn2;
    r.asymptote = (lead - mean_log_g * kLog2e) / model.cfg.frame_len;
    return r;
}

double slope_estimator(const std::function<double(double)>& rate_fn, double snr_lo,
                       double snr_hi) {
    if (!(snr_hi > snr_lo && snr_lo > 0.0))
        throw std::invalid_argument("slope_estimator requires snr_hi > snr_lo > 0");
    return (rate_fn(snr_hi) - rate_fn(snr_lo)) / (std::log2(snr_hi) - std::log2(snr_lo));
}

double diversity_estimator(const std::function<double(double)>& op_fn, double snr_lo,
                           double snr_hi) {
    if (!(snr_hi > snr_lo && snr_lo > 0.0))
        throw std::invalid_argument("diversity_estimator requires snr_hi > snr_lo > 0");
    return -(std::log2(op_fn(snr_hi)) - std::log2(op_fn(snr_lo))) /
           (std::log2(snr_hi) - std::log2(snr_lo));
}

}  // namespace capa
