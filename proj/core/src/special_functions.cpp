#include "capa/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "capa/quadrature.hpp"

namespace capa {

namespace {

// E1(y) for y >= 1 by modified Lentz continued fraction:
// E1(y) = e^{-y} * 1/(y+1- 1/(y+3- 4/(y+5- 9/(...)))).
double expint_e1_cf(double y) {
    const double tiny = 1e-300;
    double b = y + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 400; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-y) * h;
}

}  // namespace

double expint_ei(double x) {
    if (!(x < 0.0)) throw std::invalid_argument("expint_ei requires x < 0");
    const double y = -x;
    if (y >= 1.0) return -expint_e1_cf(y);
    // Ei(x) = C + ln|x| + sum_k x^k / (k * k!)
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k <= 200; ++k) {
        term *= x / k;
        const double add = term / k;
        sum += add;
        if (std::abs(add) < 1e-17 * (std::abs(sum) + 1.0)) break;
    }
    return kEulerGamma + std::log(y) + sum;
}

namespace {

// Series for P(s, x), valid for x < s + 1.
double gammp_series(double s, double x) {
    double ap = s;
    double sum = 1.0 / s;
    double del = sum;
    for (int n = 0; n < 10000; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Continued fraction for Q(s, x) = 1 - P(s, x), valid for x >= s + 1.
double gammq_cf(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 10000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

}  // namespace

double reg_lower_gamma(double s, double x) {
    if (!(s > 0.0)) throw std::invalid_argument("lower_gamma requires s > 0");
    if (!(x >= 0.0)) throw std::invalid_argument("lower_gamma requires x >= 0");
    if (x == 0.0) return 0.0;
    return (x < s + 1.0) ? gammp_series(s, x) : 1.0 - gammq_cf(s, x);
}

double lower_gamma(double s, double x) {
    return reg_lower_gamma(s, x) * std::tgamma(s);
}

double digamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("digamma requires x > 0");
    double result = 0.0;
    while (x < 6.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    // Asymptotic expansion with Bernoulli-number coefficients.
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv
              - inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0
              - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
    return result;
}

namespace {

// Direct evaluation of J_k(a) by log-domain Gauss-Legendre over the
// Gamma(k+1) concentration window; used only to seed the recurrence at
// the crossover index where neither direction is self-starting.
double log_expectation_term_direct(int k, double a) {
    const double sk = std::sqrt(k + 1.0);
    const double lo = std::max(0.0, k - 12.0 * sk);
    const double hi = k + 12.0 * sk + 40.0;
    static const GaussLegendreRule base = gauss_legendre(240);
    const auto rule = map_rule(base, lo, hi);
    const double lg = std::lgamma(k + 1.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double u = rule.nodes[i];
        if (u <= 0.0) continue;
        acc += rule.weights[i] * std::exp(k * std::log(u) - u - lg) / (u + a);
    }
    return acc;
}

}  // namespace

std::vector<double> log_expectation_terms(double a, int k_max) {
    if (!(a > 0.0)) throw std::invalid_argument("log_expectation_terms requires a > 0");
    if (k_max < 0) throw std::invalid_argument("k_max must be nonnegative");
    std::vector<double> J(static_cast<std::size_t>(k_max) + 1);
    // Upward error amplification is a/k per step, so the recurrence is
    // self-starting from k = 0 only while e^a stays within round-off.
    if (a <= 25.0) {
        J[0] = std::exp(a) * (-expint_ei(-a));
        for (int k = 1; k <= k_max; ++k) J[k] = (1.0 - a * J[k - 1]) / k;
        return J;
    }
    const int ks = std::min(static_cast<int>(std::ceil(a)) + 10, k_max);
    J[ks] = log_expectation_term_direct(ks, a);
    for (int k = ks + 1; k <= k_max; ++k) J[k] = (1.0 - a * J[k - 1]) / k;
    for (int k = ks; k >= 1; --k) J[k - 1] = (1.0 - k * J[k]) / a;
    return J;
}

}  // namespace capa
