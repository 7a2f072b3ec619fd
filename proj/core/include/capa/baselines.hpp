#pragma once

#include <vector>

#include "capa/model.hpp"
#include "capa/pareto.hpp"

namespace capa {

/// Frequency-division baseline: bandwidth fraction kappa and power
/// fraction iota are dedicated to sensing.
struct FdsacRates {
    double sr = 0.0;
    double ecr = 0.0;
};

/// SR = (kappa/L) log2(1 + (iota/kappa) snr_s L alpha_s G_r G_t),
/// ECR = (1-kappa) E[log2(1 + ((1-iota)/(1-kappa)) snr_c g)].
/// kappa, iota in {0,1} are handled as limits.
FdsacRates fdsac_rates(const IsacModel& model, double kappa, double iota);

/// Pareto-filtered hull of (SR, ECR) over a (kappa, iota) grid.
std::vector<RegionPoint> fdsac_region(const IsacModel& model, int grid);

/// Spatially discrete array on both apertures: elements of length
/// sqrt(lambda^2 / 4 pi) at spacing d_s, kept fully inside each interval.
/// Per-element response = continuous channel at the element center times
/// the integration weight min(element_len, d_s).
struct SpdaGeometry {
    std::vector<double> tx_centers;
    std::vector<double> rx_centers;
    double element_len = 0.0;
    double weight = 0.0;  // per-element integration weight
    double spacing = 0.0;
};

SpdaGeometry spda_geometry(const SystemConfig& cfg, double spacing);

/// Discrete analogue of the CAPA model: matched-filter (S-C) and
/// maximum-ratio (C-C) beamforming over element samples. The channel-gain
/// law reuses the hypoexponential machinery on the eigenvalues of the
/// weighted covariance; sampling uses its eigen square root.
struct SpdaModel {
    SpdaGeometry geometry;
    double gain_tx = 0.0;               // sum w |hs(tx_i)|^2
    double gain_rx = 0.0;
    double xi = 0.0;                    // hs^H W R W hs on the tx grid
    Eigen::VectorXd gain_eigs;          // eigenvalues of W^{1/2} R W^{1/2}
    Eigen::MatrixXcd sqrt_cov;          // weighted sampling square root
    Eigen::VectorXcd hs_tx;             // element-center sensing channel
    SystemConfig cfg;

    /// One multivariate CN(0, R) draw mapped to (g, rho) element sums.
    FadingRealization sample(CounterRng& rng) const;
};

SpdaModel build_spda(const SystemConfig& cfg, double spacing);

/// Closed-form SPDA metrics (same formula structure as the CAPA ones,
/// evaluated on the discrete gains / eigenvalues).
struct SpdaRates {
    double sr_sc = 0.0;    // deterministic
    double ecr_sc = 0.0;
    double op_sc = 0.0;
    double ecr_cc = 0.0;
    double op_cc = 0.0;
    double avg_sr_cc = 0.0;
};

SpdaRates spda_rates(const SpdaModel& spda);

/// Ergodic SR-CR boundary of the SPDA-ISAC scheme (per-realization
/// Pareto beamformer on the element grid).
std::vector<RegionPoint> spda_region(const SpdaModel& spda, const std::vector<double>& taus,
                                     std::int64_t n_mc, std::uint64_t seed);

}  // namespace capa
