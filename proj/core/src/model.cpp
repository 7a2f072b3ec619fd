#include "capa/model.hpp"

#include "capa/sensing.hpp"

namespace capa {

IsacModel build_model(const SystemConfig& cfg) {
    cfg.validate();
    KernelSpectrum spectrum = build_spectrum(cfg);
    const int n = retained_count(spectrum);
    Eigen::VectorXd lambdas = spectrum.eigenvalues.head(n);
    Eigen::VectorXcd projections = sensing_projections(spectrum, cfg.target_pos, n);
    const double gt = aperture_gain_closed(tx_interval(cfg), cfg.target_pos);
    const double gr = aperture_gain_closed(rx_interval(cfg), cfg.target_pos);
    const double xi = xi_capital(cfg, spectrum);
    GainDistribution dist(lambdas);
    QSpectrum q = q_spectrum(cfg, spectrum);
    return IsacModel{cfg,   std::move(spectrum), std::move(lambdas), std::move(projections),
                     gt,    gr,                  xi,                 std::move(dist),
                     std::move(q)};
}

IsacModel with_snr(const IsacModel& base, double snr_sense, double snr_comm) {
    IsacModel m = base;
    m.cfg.snr_sense = snr_sense;
    m.cfg.snr_comm = snr_comm;
    m.q = q_spectrum(m.cfg, m.spectrum);
    return m;
}

IsacModel with_tx_length(const IsacModel& base, double tx_length) {
    SystemConfig cfg = base.cfg;
    cfg.tx_length = tx_length;
    return build_model(cfg);
}

}  // namespace capa
