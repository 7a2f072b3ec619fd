#include <doctest.h>

#include <stdexcept>

#include "capa/config.hpp"
#include "support/test_support.hpp"

using namespace capa;

TEST_SUITE("config") {

TEST_CASE("paper defaults load with dB conversion") {
    const SystemConfig cfg = capa_test::defaults();
    CHECK(cfg.wavelength == doctest::Approx(0.125));
    CHECK(cfg.tx_length == doctest::Approx(1.25));
    CHECK(cfg.rx_length == doctest::Approx(1.25));
    CHECK(cfg.gap == doctest::Approx(0.25));
    CHECK(cfg.snr_sense == doctest::Approx(1e5));
    CHECK(cfg.snr_comm == doctest::Approx(1e5));
    CHECK(cfg.frame_len == 4);
    CHECK(cfg.rcs_power == doctest::Approx(1.0));
    CHECK(cfg.target_rate == doctest::Approx(5.0));
    CHECK(cfg.target_pos.x == doctest::Approx(2.0));
    CHECK(cfg.target_pos.y == doctest::Approx(1.0));
    CHECK(cfg.target_pos.z == doctest::Approx(1.0));
    CHECK(cfg.user_pos.x == doctest::Approx(4.0));
}

TEST_CASE("optional fields default") {
    const char* minimal = R"({
        "wavelength": 0.125, "tx_length": 1.25, "rx_length": 1.25, "gap": 0.25,
        "target_pos": [2, 1, 1], "user_pos": [4, 0, 0],
        "snr_sense_db": 50, "snr_comm_db": 50,
        "frame_len": 4, "rcs_power": 1, "target_rate": 5
    })";
    const SystemConfig cfg = parse_config(minimal);
    CHECK(cfg.quadrature_order == 1000);
    CHECK(cfg.mc_samples == 100000);
}

TEST_CASE("invariant violations report the field") {
    SystemConfig cfg = capa_test::defaults();
    cfg.tx_length = 0.0;
    CHECK_THROWS_WITH_AS(cfg.validate(), "tx_length must be positive", std::invalid_argument);

    cfg = capa_test::defaults();
    cfg.target_pos = {0.0, 0.0, 3.0};
    CHECK_THROWS_WITH_AS(cfg.validate(), "target on array axis", std::invalid_argument);

    cfg = capa_test::defaults();
    cfg.snr_comm = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("parse failures throw") {
    CHECK_THROWS_AS(parse_config("{ not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"wavelength": 0.125})"), std::invalid_argument);
    CHECK_THROWS_AS(load_config("/nonexistent/path.json"), std::invalid_argument);
}

TEST_CASE("aperture intervals") {
    const SystemConfig cfg = capa_test::defaults();
    const auto tx = tx_interval(cfg);
    const auto rx = rx_interval(cfg);
    CHECK(tx.lo == doctest::Approx(0.125));
    CHECK(tx.hi == doctest::Approx(1.375));
    CHECK(rx.lo == doctest::Approx(-1.375));
    CHECK(rx.hi == doctest::Approx(-0.125));
    CHECK(tx.length() == doctest::Approx(cfg.tx_length));
    CHECK(rx.length() == doctest::Approx(cfg.rx_length));
    CHECK(tx.lo >= rx.hi);  // disjoint when gap > 0

    SystemConfig zero_gap = cfg;
    zero_gap.gap = 0.0;
    zero_gap.tx_length = 1.0;
    const auto tx0 = tx_interval(zero_gap);
    CHECK(tx0.lo == doctest::Approx(0.0));
    CHECK(tx0.hi == doctest::Approx(1.0));
}

TEST_CASE("serialize round-trip is identity") {
    const SystemConfig a = capa_test::defaults();
    const SystemConfig b = parse_config(serialize_config(a));
    CHECK(b.wavelength == a.wavelength);
    CHECK(b.tx_length == a.tx_length);
    CHECK(b.rx_length == a.rx_length);
    CHECK(b.gap == a.gap);
    CHECK(b.snr_sense == doctest::Approx(a.snr_sense).epsilon(1e-12));
    CHECK(b.snr_comm == doctest::Approx(a.snr_comm).epsilon(1e-12));
    CHECK(b.frame_len == a.frame_len);
    CHECK(b.rcs_power == a.rcs_power);
    CHECK(b.target_rate == a.target_rate);
    CHECK(b.quadrature_order == a.quadrature_order);
    CHECK(b.mc_samples == a.mc_samples);
    CHECK(b.seed == a.seed);
    CHECK(b.target_pos.z == a.target_pos.z);
}

TEST_CASE("wavenumber accessor") {
    const SystemConfig cfg = capa_test::defaults();
    CHECK(cfg.wavenumber() == doctest::Approx(2.0 * 3.14159265358979312 / 0.125));
}

}  // TEST_SUITE
