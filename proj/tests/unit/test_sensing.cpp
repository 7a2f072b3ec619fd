#include <doctest.h>

#include <cmath>
#include <numbers>

#include "capa/rng.hpp"
#include "capa/sensing.hpp"
#include "support/test_support.hpp"

using namespace capa;

namespace {
const double kFourPi = 4.0 * std::numbers::pi;
}

TEST_SUITE("sensing") {

TEST_CASE("channel magnitude and phase at unit distance") {
    const double k0 = capa_test::defaults().wavenumber();
    const auto h = h_s_eval(0.0, {1.0, 0.0, 0.0}, k0);
    CHECK(std::abs(h) == doctest::Approx(1.0 / std::sqrt(kFourPi)).epsilon(1e-14));
    CHECK(std::arg(h) == doctest::Approx(std::remainder(-k0, 2.0 * std::numbers::pi)));
}

TEST_CASE("3-4-5 distance") {
    const double z = 0.7;
    const auto h = h_s_eval(z, {3.0, 4.0, z}, 1.0);
    CHECK(std::abs(h) == doctest::Approx(1.0 / (std::sqrt(kFourPi) * 5.0)).epsilon(1e-14));
}

TEST_CASE("defaults at the aperture edge") {
    // r^2 = z^2 - 2 p_z z + |p|^2 = 5.765625 at z = 0.125, p = (2,1,1).
    const auto cfg = capa_test::defaults();
    const auto h = h_s_eval(0.125, cfg.target_pos, cfg.wavenumber());
    CHECK(std::norm(h) == doctest::Approx(1.0 / (kFourPi * 5.765625)).epsilon(1e-14));
    CHECK(std::norm(h) == doctest::Approx(0.0138020546854760183).epsilon(1e-14));
}

TEST_CASE("closed-form gains at paper defaults") {
    const auto cfg = capa_test::defaults();
    const double gt = aperture_gain_closed(tx_interval(cfg), cfg.target_pos);
    const double gr = aperture_gain_closed(rx_interval(cfg), cfg.target_pos);
    CHECK(gt == doctest::Approx(0.0191874505321798289).epsilon(1e-14));
    CHECK(gr == doctest::Approx(0.0124338663764664892).epsilon(1e-14));
}

TEST_CASE("quadrature oracle agrees with the closed form") {
    const auto cfg = capa_test::defaults();
    for (const auto& iv : {tx_interval(cfg), rx_interval(cfg)}) {
        const double closed = aperture_gain_closed(iv, cfg.target_pos);
        const double quad200 = aperture_gain_quadrature(iv, cfg.target_pos, 200);
        CHECK(std::abs(closed - quad200) / closed < 1e-10);
        const double quad500 = aperture_gain_quadrature(iv, cfg.target_pos, 500);
        CHECK(std::abs(closed - quad500) / closed < 1e-8);
    }
}

TEST_CASE("quadrature error shrinks monotonically in T") {
    const auto cfg = capa_test::defaults();
    const auto iv = tx_interval(cfg);
    const double closed = aperture_gain_closed(iv, cfg.target_pos);
    const double e1 = std::abs(aperture_gain_quadrature(iv, cfg.target_pos, 1) - closed);
    const double e4 = std::abs(aperture_gain_quadrature(iv, cfg.target_pos, 4) - closed);
    const double e16 = std::abs(aperture_gain_quadrature(iv, cfg.target_pos, 16) - closed);
    CHECK(e1 > e4);
    CHECK(e4 > e16);
}

TEST_CASE("degenerate interval has zero gain") {
    const ApertureInterval iv{0.4, 0.4, ApertureKind::transmit};
    CHECK(aperture_gain_closed(iv, {2.0, 1.0, 1.0}) == doctest::Approx(0.0));
}

TEST_CASE("far-field limit equals constant-integrand value") {
    const ApertureInterval iv{0.125, 1.375, ApertureKind::transmit};
    const Vec3 far{100.0, 0.0, 0.0};
    const double g = aperture_gain_closed(iv, far);
    CHECK(g == doctest::Approx(iv.length() / (kFourPi * 1e4)).epsilon(1e-3));
}

TEST_CASE("gain is monotone in interval length") {
    const Vec3 p{2.0, 1.0, 1.0};
    double prev = 0.0;
    for (double hi = 0.2; hi <= 2.0; hi += 0.2) {
        const double g = aperture_gain_closed({0.125, hi, ApertureKind::transmit}, p);
        CHECK(g > prev);
        prev = g;
    }
}

TEST_CASE("translation symmetry (property)") {
    CounterRng rng(99, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const double lo = 4.0 * (rng.uniform() - 0.5);
        const double len = 0.1 + 2.0 * rng.uniform();
        const Vec3 p{0.5 + 3.0 * rng.uniform(), 2.0 * (rng.uniform() - 0.5),
                     4.0 * (rng.uniform() - 0.5)};
        const double shift = 10.0 * (rng.uniform() - 0.5);
        const double g0 = aperture_gain_closed({lo, lo + len, ApertureKind::transmit}, p);
        const Vec3 ps{p.x, p.y, p.z + shift};
        const double g1 =
            aperture_gain_closed({lo + shift, lo + len + shift, ApertureKind::transmit}, ps);
        CHECK(g1 == doctest::Approx(g0).epsilon(1e-12));
        CHECK(g0 > 0.0);
    }
}

TEST_CASE("on-axis target rejected") {
    CHECK_THROWS_AS(aperture_gain_closed({0.0, 1.0, ApertureKind::transmit}, {0.0, 0.0, 3.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(h_s_eval(3.0, {0.0, 0.0, 3.0}, 1.0), std::invalid_argument);
}

}  // TEST_SUITE
