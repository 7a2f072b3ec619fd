#include "capa/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace capa {

GaussLegendreRule gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
    GaussLegendreRule rule;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.resize(order);

    const int mid = (order + 1) / 2;
    for (int i = 0; i < mid; ++i) {
        // Tricomi initial guess for the i-th root, then Newton on P_T.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[order - 1 - i] = x;  // cos ordering is decreasing; store increasing
        rule.weights[order - 1 - i] = w;
        rule.nodes[i] = -x;
        rule.weights[i] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

MappedRule map_rule(const GaussLegendreRule& rule, double a, double b) {
    MappedRule out;
    out.nodes.resize(rule.order);
    out.weights.resize(rule.order);
    const double half = (b - a) / 2.0;
    const double mid = (a + b) / 2.0;
    for (int i = 0; i < rule.order; ++i) {
        out.nodes[i] = half * rule.nodes[i] + mid;
        out.weights[i] = half * rule.weights[i];
    }
    return out;
}

}  // namespace capa
