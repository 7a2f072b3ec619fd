#pragma once

#include <functional>

#include "capa/fading.hpp"
#include "capa/model.hpp"

namespace capa {

/// Closed-form value together with its high-SNR asymptote.
struct MetricReport {
    double value = 0.0;
    double asymptote = 0.0;
};

/// S-C sensing rate (deterministic): (1/L) log2(1 + snr_s L alpha_s G_r G_t).
MetricReport sr_sc(const SystemConfig& cfg, double gain_tx, double gain_rx);

/// S-C ergodic communication rate: -(1/ln2) e^a Ei(-a), a = G_t/(snr_c Xi).
MetricReport ecr_sc(const SystemConfig& cfg, double gain_tx, double xi);

/// S-C outage probability: 1 - exp(-a (2^R0 - 1)).
MetricReport op_sc(const SystemConfig& cfg, double gain_tx, double xi);

/// C-C ergodic rate from the channel-gain law (Gamma-mixture series over
/// exponential-integral terms, evaluated through the stable recurrence).
MetricReport ecr_cc(const GainDistribution& dist, double snr_comm);

/// C-C outage probability F_g((2^R0 - 1)/snr); asymptote has exponent N.
MetricReport op_cc(const GainDistribution& dist, double snr_comm, double target_rate);

/// C-C average sensing rate: (log2 e / L)(E[ln sum nu|Phi|^2] - E[ln g_c]).
MetricReport avg_sr_cc(const IsacModel& model);

/// Finite-difference slope of rate_fn in log2-SNR between snr_lo and snr_hi.
double slope_estimator(const std::function<double(double)>& rate_fn, double snr_lo,
                       double snr_hi);

/// Diversity order: -d log2 P / d log2 snr between the two SNRs.
double diversity_estimator(const std::function<double(double)>& op_fn, double snr_lo,
                           double snr_hi);

}  // namespace capa
