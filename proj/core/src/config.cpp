#include "capa/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace capa {

using nlohmann::json;

double SystemConfig::wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }

void SystemConfig::validate() const {
    if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be positive");
    if (!(tx_length > 0.0)) throw std::invalid_argument("tx_length must be positive");
    if (!(rx_length > 0.0)) throw std::invalid_argument("rx_length must be positive");
    if (!(gap >= 0.0)) throw std::invalid_argument("gap must be nonnegative");
    if (!(snr_sense > 0.0)) throw std::invalid_argument("snr_sense must be positive");
    if (!(snr_comm > 0.0)) throw std::invalid_argument("snr_comm must be positive");
    if (frame_len < 1) throw std::invalid_argument("frame_len must be a positive integer");
    if (!(rcs_power >= 0.0)) throw std::invalid_argument("rcs_power must be nonnegative");
    if (!(target_rate >= 0.0)) throw std::invalid_argument("target_rate must be nonnegative");
    if (quadrature_order < 1) throw std::invalid_argument("quadrature_order must be a positive integer");
    if (mc_samples < 1) throw std::invalid_argument("mc_samples must be a positive integer");
    // The zeta formula divides by sqrt(p_x^2 + p_y^2).
    if (target_pos.x * target_pos.x + target_pos.y * target_pos.y <= 0.0)
        throw std::invalid_argument("target on array axis");
}

ApertureInterval tx_interval(const SystemConfig& cfg) {
    return {cfg.gap / 2.0, cfg.gap / 2.0 + cfg.tx_length, ApertureKind::transmit};
}

ApertureInterval rx_interval(const SystemConfig& cfg) {
    return {-cfg.gap / 2.0 - cfg.rx_length, -cfg.gap / 2.0, ApertureKind::receive};
}

namespace {

double get_number(const json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing field: ") + key);
    if (!j[key].is_number()) throw std::invalid_argument(std::string("field is not a number: ") + key);
    return j[key].get<double>();
}

Vec3 get_vec3(const json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing field: ") + key);
    const auto& a = j[key];
    if (!a.is_array() || a.size() != 3)
        throw std::invalid_argument(std::string("field is not a 3-vector: ") + key);
    return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace

SystemConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse failure: ") + e.what());
    }

    SystemConfig cfg;
    cfg.wavelength = get_number(j, "wavelength");
    cfg.tx_length = get_number(j, "tx_length");
    cfg.rx_length = get_number(j, "rx_length");
    cfg.gap = get_number(j, "gap");
    cfg.target_pos = get_vec3(j, "target_pos");
    cfg.user_pos = get_vec3(j, "user_pos");
    cfg.snr_sense = db_to_linear(get_number(j, "snr_sense_db"));
    cfg.snr_comm = db_to_linear(get_number(j, "snr_comm_db"));
    cfg.frame_len = static_cast<int>(get_number(j, "frame_len"));
    cfg.rcs_power = get_number(j, "rcs_power");
    cfg.target_rate = get_number(j, "target_rate");
    if (j.contains("quadrature_order")) cfg.quadrature_order = j["quadrature_order"].get<int>();
    if (j.contains("mc_samples")) cfg.mc_samples = j["mc_samples"].get<std::int64_t>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();

    cfg.validate();
    return cfg;
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const SystemConfig& cfg) {
    json j;
    j["wavelength"] = cfg.wavelength;
    j["tx_length"] = cfg.tx_length;
    j["rx_length"] = cfg.rx_length;
    j["gap"] = cfg.gap;
    j["target_pos"] = {cfg.target_pos.x, cfg.target_pos.y, cfg.target_pos.z};
    j["user_pos"] = {cfg.user_pos.x, cfg.user_pos.y, cfg.user_pos.z};
    j["snr_sense_db"] = linear_to_db(cfg.snr_sense);
    j["snr_comm_db"] = linear_to_db(cfg.snr_comm);
    j["frame_len"] = cfg.frame_len;
    j["rcs_power"] = cfg.rcs_power;
    j["target_rate"] = cfg.target_rate;
    j["quadrature_order"] = cfg.quadrature_order;
    j["mc_samples"] = cfg.mc_samples;
    j["seed"] = cfg.seed;
    return j.dump(2);
}

}  // namespace capa
