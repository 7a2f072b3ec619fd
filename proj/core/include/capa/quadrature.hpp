#pragma once

#include <vector>

namespace capa {

/// Gauss-Legendre rule on [-1, 1]. Nodes are the roots of the T-th
/// Legendre polynomial, strictly increasing; weights sum to 2.
struct GaussLegendreRule {
    int order = 0;
    std::vector<double> nodes;    // eta_t in (-1, 1)
    std::vector<double> weights;  // omega_t > 0
};

GaussLegendreRule gauss_legendre(int order);

/// Nodes/weights mapped to [a, b]; weights sum to b - a.
struct MappedRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

MappedRule map_rule(const GaussLegendreRule& rule, double a, double b);

template <typename F>
double integrate(const MappedRule& rule, F&& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(rule.nodes[i]);
    return acc;
}

}  // namespace capa
