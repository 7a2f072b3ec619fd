#include <doctest.h>

#include <cmath>

#include "capa/quadrature.hpp"

using namespace capa;

TEST_SUITE("quadrature") {

TEST_CASE("weights sum to 2 and nodes increase") {
    for (int order : {1, 2, 7, 64, 333}) {
        const auto rule = gauss_legendre(order);
        double sum = 0.0;
        for (double w : rule.weights) {
            CHECK(w > 0.0);
            sum += w;
        }
        CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
        for (int i = 1; i < order; ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        CHECK(rule.nodes.front() > -1.0);
        CHECK(rule.nodes.back() < 1.0);
    }
}

TEST_CASE("polynomial exactness of degree 2T-1") {
    const auto rule = map_rule(gauss_legendre(6), 0.0, 2.0);
    // x^11 over [0,2]: exact value 2^12/12.
    const double got = integrate(rule, [](double x) { return std::pow(x, 11); });
    CHECK(got == doctest::Approx(4096.0 / 12.0).epsilon(1e-13));
}

TEST_CASE("mapped rule covers the interval") {
    const auto rule = map_rule(gauss_legendre(40), 0.125, 1.375);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        CHECK(rule.nodes[i] > 0.125);
        CHECK(rule.nodes[i] < 1.375);
        sum += rule.weights[i];
    }
    CHECK(sum == doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("oscillatory integral converges") {
    const auto rule = map_rule(gauss_legendre(200), 0.0, 1.0);
    const double got = integrate(rule, [](double x) { return std::sin(50.0 * x); });
    CHECK(got == doctest::Approx((1.0 - std::cos(50.0)) / 50.0).epsilon(1e-12));
}

}  // TEST_SUITE
