#pragma once

#include <cstdint>

#include "capa/model.hpp"

namespace capa {

enum class McMetric {
    ecr_sc,      // log2(1 + snr_c |rho|^2 / G_t)
    op_sc,       // indicator of outage under the S-C beamformer
    ecr_cc,      // log2(1 + snr_c g_c)
    op_cc,       // indicator of outage under the C-C beamformer
    avg_sr_cc,   // (1/L) log2(1 + L a_s snr_s G_r |rho|^2 / g_c)
    mean_gain,   // g_c
    mean_rho_sq  // |rho|^2
};

struct McEstimate {
    double mean = 0.0;
    double stderr_val = 0.0;   // sample std / sqrt(n)
    double wilson_half = 0.0;  // 95% Wilson half-width (binomial metrics only)
    std::int64_t n = 0;
    std::uint64_t seed = 0;
};

/// Seeded estimate of a per-realization metric. Sample i draws from the
/// counter substream (seed, i); block sums are combined pairwise in index
/// order, so the result is bitwise identical for any worker count.
McEstimate estimate(const IsacModel& model, McMetric metric, std::int64_t n,
                    std::uint64_t seed, int workers = 0);

}  // namespace capa
