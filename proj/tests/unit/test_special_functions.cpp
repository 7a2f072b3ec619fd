#include <doctest.h>

#include <cmath>

#include "capa/special_functions.hpp"
#include "support/test_support.hpp"

using namespace capa;
using capa_test::oracle_integrate;

TEST_SUITE("special_functions") {

TEST_CASE("Ei at frozen reference points") {
    CHECK(expint_ei(-1.0) == doctest::Approx(-0.219383934395520274).epsilon(1e-12));
    CHECK(expint_ei(-0.5) == doctest::Approx(-0.559773594776160812).epsilon(1e-12));
    CHECK(expint_ei(-10.0) == doctest::Approx(-4.15696892968532428e-6).epsilon(1e-10));
    CHECK(expint_ei(-25.0) == doctest::Approx(-5.34889975534021664e-13).epsilon(1e-10));
}

TEST_CASE("Ei vs defining-integral oracle") {
    // Ei(x) = -Integral_{-x}^{inf} e^{-t}/t dt, truncated far into the tail.
    for (double x : {-0.25, -1.5, -4.0}) {
        const double oracle =
            -oracle_integrate([](double t) { return std::exp(-t) / t; }, -x, 60.0, 1e-14);
        CHECK(expint_ei(x) == doctest::Approx(oracle).epsilon(1e-10));
    }
}

TEST_CASE("Ei series and continued fraction agree at the switch point") {
    // Both branches evaluated just inside their domains around |x| = 1.
    const double below = expint_ei(-0.9999999);
    const double above = expint_ei(-1.0000001);
    CHECK(std::abs(below - above) < 1e-6 * std::abs(below));
    CHECK(expint_ei(-1e-3) < 0.0);
    CHECK(expint_ei(-50.0) < 0.0);
}

TEST_CASE("Ei log singularity toward zero") {
    CHECK(expint_ei(-1e-8) == doctest::Approx(kEulerGamma + std::log(1e-8)).epsilon(1e-9));
    CHECK(expint_ei(-1e-8) < -17.0);
}

TEST_CASE("Ei rejects nonnegative arguments") {
    CHECK_THROWS_AS(expint_ei(0.0), std::invalid_argument);
    CHECK_THROWS_AS(expint_ei(2.0), std::invalid_argument);
}

TEST_CASE("lower incomplete gamma closed cases") {
    CHECK(lower_gamma(2.0, 1.0) == doctest::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-12));
    CHECK(lower_gamma(1.0, 0.0) == doctest::Approx(0.0));
    CHECK(lower_gamma(5.0, 0.0) == doctest::Approx(0.0));
    // gamma(20, 20) against the frozen high-precision value.
    CHECK(lower_gamma(20.0, 20.0) == doctest::Approx(6.44406079661897489e16).epsilon(1e-10));
}

TEST_CASE("lower gamma vs quadrature oracle") {
    const double got = lower_gamma(20.0, 20.0);
    const double oracle = oracle_integrate(
        [](double t) { return std::exp(19.0 * std::log(t) - t); }, 1e-12, 20.0, 1e-9);
    CHECK(got == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("lower gamma monotone in x and bounded by Gamma(s)") {
    double prev = 0.0;
    for (double x = 0.5; x < 30.0; x += 0.5) {
        const double v = lower_gamma(3.5, x);
        CHECK(v >= prev);
        CHECK(v <= std::tgamma(3.5) * (1.0 + 1e-12));
        prev = v;
    }
    CHECK(reg_lower_gamma(3.5, 1e6) == doctest::Approx(1.0));
}

TEST_CASE("gamma recurrence gamma(s+1,x) = s gamma(s,x) - x^s e^{-x}") {
    for (double s : {0.7, 2.0, 8.3}) {
        for (double x : {0.3, 1.0, 7.5, 20.0}) {
            const double lhs = lower_gamma(s + 1.0, x);
            const double rhs = s * lower_gamma(s, x) - std::pow(x, s) * std::exp(-x);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
    }
}

TEST_CASE("digamma reference values") {
    CHECK(digamma(1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-12));
    CHECK(digamma(2.0) == doctest::Approx(1.0 - kEulerGamma).epsilon(1e-12));
    CHECK(digamma(20.5) == doctest::Approx(2.99583639470764658).epsilon(1e-12));
    CHECK(digamma(0.1) == doctest::Approx(-10.4237549404110762).epsilon(1e-12));
}

TEST_CASE("digamma recurrence psi(x+1) = psi(x) + 1/x") {
    for (double x : {0.2, 1.7, 5.0, 33.3}) {
        CHECK(digamma(x + 1.0) == doctest::Approx(digamma(x) + 1.0 / x).epsilon(1e-10));
    }
}

TEST_CASE("digamma matches central difference of log-gamma") {
    for (double x : {2.5, 20.5, 77.0}) {
        const double h = 1e-5 * x;
        const double fd = (std::lgamma(x + h) - std::lgamma(x - h)) / (2.0 * h);
        CHECK(digamma(x) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("log expectation terms vs quadrature across regimes") {
    for (double a : {0.01, 1.0, 17.0, 80.0, 300.0}) {
        const auto J = log_expectation_terms(a, 60);
        for (int k : {0, 1, 5, 30, 60}) {
            const double lg = std::lgamma(k + 1.0);
            const double sk = std::sqrt(k + 1.0);
            const double oracle = oracle_integrate(
                [&](double u) { return std::exp(k * std::log(u) - u - lg) / (u + a); },
                1e-14, k + 14.0 * sk + 60.0, 1e-15);
            CHECK(J[k] == doctest::Approx(oracle).epsilon(1e-9));
            CHECK(J[k] > 0.0);
        }
    }
}

TEST_CASE("prefix sums reproduce E[ln(1 + snr X)] for Gamma X") {
    // n = 25, theta = 0.04, snr = 250 -> a = 0.1; oracle by quadrature on
    // the Gamma density.
    const int n = 25;
    const double theta = 0.04, snr = 250.0;
    const auto J = log_expectation_terms(1.0 / (snr * theta), n - 1);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += J[k];
    const double lg = std::lgamma(n);
    const double oracle = oracle_integrate(
        [&](double x) {
            return std::log(1.0 + snr * x) *
                   std::exp((n - 1.0) * std::log(x) - x / theta - n * std::log(theta) - lg);
        },
        1e-12, n * theta + 30.0 * std::sqrt(n) * theta, 1e-14);
    CHECK(sum == doctest::Approx(oracle).epsilon(1e-10));
}

}  // TEST_SUITE
