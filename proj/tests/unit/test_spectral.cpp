#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "capa/spectral.hpp"
#include "support/test_support.hpp"

using namespace capa;

namespace {

SystemConfig small_config(double lt_over_lambda, int order) {
    SystemConfig cfg = capa_test::defaults();
    cfg.tx_length = lt_over_lambda * cfg.wavelength;
    cfg.quadrature_order = order;
    return cfg;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("sinc kernel values") {
    const double k0 = 2.0 * std::numbers::pi / 0.125;
    CHECK(sinc_kernel(0.3, 0.3, k0) == doctest::Approx(1.0));
    // k0 dz = pi -> zero crossing; dz = lambda/2.
    CHECK(sinc_kernel(0.0625, 0.0, k0) == doctest::Approx(0.0).epsilon(1e-14));
    // k0 dz = pi/2 -> 2/pi.
    CHECK(sinc_kernel(0.03125, 0.0, k0) == doctest::Approx(0.636619772367581343).epsilon(1e-14));
    // Small-argument series branch agrees with the direct ratio.
    const double x = 5e-5;
    CHECK(sinc_kernel(x / k0, 0.0, k0) == doctest::Approx(std::sin(x) / x).epsilon(1e-15));
    CHECK(std::abs(sinc_kernel(0.5, 0.0, k0)) <= 1.0);
}

TEST_CASE("dof rounding rule") {
    CHECK(dof(small_config(10.0, 200)) == 20);
    CHECK(dof(small_config(0.5, 200)) == 1);   // floor at 1
    CHECK(dof(small_config(0.2, 200)) == 1);
    CHECK(dof(small_config(6.25, 200)) == 13);  // 12.5 rounds half-up
}

TEST_CASE("defaults spectrum: trace, bound, census") {
    const auto& m = capa_test::default_model();
    const auto& spec = m.spectrum;
    CHECK(spec.eigenvalues.sum() ==
          doctest::Approx(m.cfg.tx_length).epsilon(1e-3));
    CHECK(spec.normalized(0) <= 1.0 + 1e-6);
    CHECK(spec.normalized(0) >= 0.999);
    CHECK(polarization_census(spec, 0.5) == 20);
    CHECK(spec.normalized.sum() == doctest::Approx(20.0).epsilon(1e-3));
    // Descending order with nonnegative values.
    for (int i = 1; i < spec.eigenvalues.size(); ++i) {
        CHECK(spec.eigenvalues(i) <= spec.eigenvalues(i - 1) + 1e-15);
        CHECK(spec.eigenvalues(i) >= 0.0);
    }
    // Step profile: leading DoF eigenvalues near one, rapid drop after.
    CHECK(spec.normalized(15) > 0.99);
    CHECK(spec.normalized(24) < 0.05);
}

TEST_CASE("eigenvector orthonormality under the weighted inner product") {
    const auto& spec = capa_test::default_model().spectrum;
    for (int a : {0, 3, 19}) {
        for (int b : {0, 3, 19, 25}) {
            double ip = 0.0;
            for (int t = 0; t < spec.order(); ++t)
                ip += spec.node_weights(t) * spec.eigvec_nodes(t, a) * spec.eigvec_nodes(t, b);
            CHECK(ip == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("symmetrized solve matches the plain Nystrom matrix") {
    // Z = R D is non-symmetric; its eigenvalues must match the symmetric
    // route within round-off (small T keeps the general solver cheap).
    const SystemConfig cfg = small_config(2.0, 64);
    const auto spec = build_spectrum(cfg);
    const auto iv = tx_interval(cfg);
    const auto rule = map_rule(gauss_legendre(64), iv.lo, iv.hi);
    Eigen::MatrixXd Z(64, 64);
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j)
            Z(i, j) = rule.weights[j] * sinc_kernel(rule.nodes[i], rule.nodes[j],
                                                    cfg.wavenumber());
    Eigen::EigenSolver<Eigen::MatrixXd> es(Z);
    Eigen::VectorXd ev = es.eigenvalues().real();
    std::sort(ev.data(), ev.data() + ev.size(), std::greater<double>());
    for (int i = 0; i < 10; ++i)
        CHECK(ev(i) == doctest::Approx(spec.eigenvalues(i)).epsilon(1e-10));
}

TEST_CASE("single-wavelength aperture has two strong modes") {
    const auto spec = build_spectrum(small_config(1.0, 200));
    CHECK(spec.dof == 2);
    CHECK(polarization_census(spec, 0.5) == 2);
    CHECK(spec.normalized(1) > 0.5);
    CHECK(spec.normalized(2) < 0.5);
}

TEST_CASE("census scales linearly with aperture and is monotone in the threshold") {
    const auto s10 = build_spectrum(small_config(10.0, 400));
    const auto s20 = build_spectrum(small_config(20.0, 400));
    const double ratio = static_cast<double>(polarization_census(s20, 0.5)) /
                         polarization_census(s10, 0.5);
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.1));
    int prev = s10.order();
    for (double eps : {0.01, 0.1, 0.5, 0.9, 0.99}) {
        const int c = polarization_census(s10, eps);
        CHECK(c <= prev);
        prev = c;
    }
}

TEST_CASE("quadrature order floor enforced") {
    SystemConfig cfg = small_config(10.0, 32);  // DoF 20 needs T >= 80
    CHECK_THROWS_AS(build_spectrum(cfg), std::invalid_argument);
}

TEST_CASE("Nystrom extension reproduces node values") {
    const auto spec = build_spectrum(small_config(4.0, 160));
    for (int n : {0, 2, 7}) {
        for (int t : {0, 40, 159}) {
            CHECK(eigenfunction_interp(spec, n, spec.nodes(t)) ==
                  doctest::Approx(spec.eigvec_nodes(t, n)).epsilon(1e-10));
        }
    }
}

TEST_CASE("Nystrom extension orthonormality via independent quadrature") {
    const auto spec = build_spectrum(small_config(4.0, 160));
    const auto iv = tx_interval(small_config(4.0, 160));
    const auto fine = map_rule(gauss_legendre(800), iv.lo, iv.hi);
    const auto inner = [&](int a, int b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < fine.nodes.size(); ++i)
            acc += fine.weights[i] * eigenfunction_interp(spec, a, fine.nodes[i]) *
                   eigenfunction_interp(spec, b, fine.nodes[i]);
        return acc;
    };
    CHECK(inner(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(inner(3, 3) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(inner(0, 3)) < 1e-6);
}

TEST_CASE("Rayleigh quotient recovers the eigenvalue") {
    const SystemConfig cfg = small_config(4.0, 160);
    const auto spec = build_spectrum(cfg);
    const auto iv = tx_interval(cfg);
    const auto fine = map_rule(gauss_legendre(600), iv.lo, iv.hi);
    const int n = 3;
    double acc = 0.0;
    for (std::size_t i = 0; i < fine.nodes.size(); ++i) {
        double inner_acc = 0.0;
        for (std::size_t j = 0; j < fine.nodes.size(); ++j)
            inner_acc += fine.weights[j] *
                         sinc_kernel(fine.nodes[i], fine.nodes[j], cfg.wavenumber()) *
                         eigenfunction_interp(spec, n, fine.nodes[j]);
        acc += fine.weights[i] * eigenfunction_interp(spec, n, fine.nodes[i]) * inner_acc;
    }
    CHECK(acc == doctest::Approx(spec.eigenvalues(n)).epsilon(1e-6));
}

TEST_CASE("extension of a numerically null mode is rejected") {
    const auto spec = build_spectrum(small_config(2.0, 100));
    CHECK_THROWS_AS(eigenfunction_interp(spec, 99, 0.2), std::invalid_argument);
}

}  // TEST_SUITE
