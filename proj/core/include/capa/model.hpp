#pragma once

#include <memory>

#include "capa/config.hpp"
#include "capa/fading.hpp"
#include "capa/spectral.hpp"

namespace capa {

/// Everything derived from a SystemConfig that the metrics, Pareto sweep,
/// baselines and Monte Carlo estimators share. Immutable once built.
struct IsacModel {
    SystemConfig cfg;
    KernelSpectrum spectrum;
    Eigen::VectorXd lambdas;      // retained eigenvalues, descending
    Eigen::VectorXcd projections; // c_n for the retained modes
    double gain_tx = 0.0;         // G_t
    double gain_rx = 0.0;         // G_r
    double xi = 0.0;              // Xi = int int hs Rc hs*
    GainDistribution dist;
    QSpectrum q;

    /// L alpha_s snr_s G_r: the rank-one sensing weight in the C-C SR.
    double sensing_scale() const {
        return cfg.frame_len * cfg.rcs_power * cfg.snr_sense * gain_rx;
    }
};

IsacModel build_model(const SystemConfig& cfg);

/// Reuses the (SNR-independent) spectrum, gains and gain law; rebuilds only
/// the rank-one Q-spectrum. Cheap enough for per-point sweeps.
IsacModel with_snr(const IsacModel& base, double snr_sense, double snr_comm);

/// Rescale of the aperture geometry (used by the aperture sweep); this one
/// re-solves the kernel eigenproblem.
IsacModel with_tx_length(const IsacModel& base, double tx_length);

}  // namespace capa
