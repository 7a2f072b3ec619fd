#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace capa {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// All physical and numerical parameters of the CAPA-ISAC setup.
/// SNRs are stored as linear ratios; config files carry them in dB.
struct SystemConfig {
    double wavelength = 0.125;       // carrier wavelength [m]
    double tx_length = 1.25;         // transmit aperture length L_t [m]
    double rx_length = 1.25;         // receive aperture length L_r [m]
    double gap = 0.25;               // end-to-end aperture separation d [m]
    Vec3 target_pos{2.0, 1.0, 1.0};  // sensing target position [m]
    Vec3 user_pos{4.0, 0.0, 0.0};    // communication user position [m]
    double snr_sense = 1e5;          // transmit SNR for sensing, linear
    double snr_comm = 1e5;           // transmit SNR for communication, linear
    int frame_len = 4;               // symbols per frame L
    double rcs_power = 1.0;          // mean target RCS power alpha_s
    double target_rate = 5.0;        // outage target rate R_0 [bits/s/Hz]
    int quadrature_order = 1000;     // Gauss-Legendre order T
    std::int64_t mc_samples = 100000;
    std::uint64_t seed = 12345;

    double wavenumber() const;  // k_0 = 2*pi/wavelength

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

enum class ApertureKind { transmit, receive };

struct ApertureInterval {
    double lo = 0.0;
    double hi = 0.0;
    ApertureKind kind = ApertureKind::transmit;

    double length() const { return hi - lo; }
};

ApertureInterval tx_interval(const SystemConfig& cfg);
ApertureInterval rx_interval(const SystemConfig& cfg);

/// Parses and validates a flat JSON config file. Optional keys
/// (quadrature_order, mc_samples, seed) fall back to defaults.
SystemConfig load_config(const std::string& path);
SystemConfig parse_config(const std::string& json_text);

/// Serialization inverse of load_config (SNRs written back in dB).
std::string serialize_config(const SystemConfig& cfg);

}  // namespace capa
