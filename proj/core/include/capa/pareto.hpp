#pragma once

#include <complex>
#include <vector>

#include "capa/model.hpp"

namespace capa {

/// Gram data of the two-channel signal subspace {hs*, hc*}. Everything the
/// Pareto solution needs: the basis itself is never materialized.
struct SubspaceRep {
    double gain_tx = 0.0;          // |hs|^2 = G_t (deterministic)
    double g_c = 0.0;              // |hc|^2 (per realization)
    std::complex<double> rho;      // <hc, hs>

    double tau_lo() const;  // |rho|^2 / (|rho|^2 + g_c^2)
    double tau_hi() const;  // G_t^2 / (G_t^2 + |rho|^2)
};

/// Validates Cauchy-Schwarz and assembles the Gram data.
SubspaceRep subspace_rep(const FadingRealization& realization, double gain_tx);

enum class ParetoBranch { comm, interior, sense };

struct ParetoPoint {
    double tau = 0.0;
    ParetoBranch branch = ParetoBranch::interior;
    double eps1 = 0.0, eps2 = 0.0, varsigma = 1.0;  // interior coefficients
    double ups_s = 0.0;  // |int hs w|^2
    double ups_c = 0.0;  // |int hc w|^2
    double objective = 0.0;  // min(ups_s/tau, ups_c/(1-tau)) with endpoint conventions
};

/// Closed-form Pareto-optimal beamformer for a given trade-off tau.
ParetoPoint pareto_weights(const SubspaceRep& rep, double tau);

/// KKT multipliers of the interior branch and the stationarity residual
/// || (mu1 hs* hs^T + mu2 hc* hc^T) w - nu w || evaluated in an explicit
/// 2-D coordinate realization of the Gram data.
struct KktDiagnostics {
    double mu1 = 0.0, mu2 = 0.0, nu = 0.0;
    double residual = 0.0;
    double norm_w = 0.0;
};
KktDiagnostics kkt_diagnostics(const SubspaceRep& rep, double tau);

/// Brute-force maximizer of min(ups_s/tau, ups_c/(1-tau)) over the unit
/// sphere of the subspace, on a grid_n x grid_n (theta, phi) grid.
double pareto_oracle(const SubspaceRep& rep, double tau, int grid_n);

/// Grid oracle with the per-realization work hoisted out: the attainable
/// (ups_s, ups_c) pairs are Pareto-filtered once, after which each tau is a
/// scan over the filtered frontier.
class ParetoOracle {
   public:
    ParetoOracle(const SubspaceRep& rep, int grid_n);
    double best(double tau) const;

   private:
    std::vector<std::pair<double, double>> frontier_;  // ups_s desc, ups_c asc
};

struct RegionPoint {
    double tau = 0.0;
    double sr = 0.0;
    double cr = 0.0;
};

/// Ergodic SR-CR boundary: for each tau, the beamformer is recomputed per
/// fading realization and both rates are averaged over n_mc draws.
std::vector<RegionPoint> region_sweep(const IsacModel& model, const std::vector<double>& taus,
                                      std::int64_t n_mc, std::uint64_t seed);

/// Per-realization rates for a given Pareto point.
double sensing_rate(const IsacModel& model, double ups_s);
double comm_rate(const IsacModel& model, double ups_c);

}  // namespace capa
