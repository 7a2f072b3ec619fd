#pragma once

#include <vector>

namespace capa {

inline constexpr double kEulerGamma = 0.57721566490153286060651209;

/// Exponential integral Ei(x) for strictly negative arguments.
/// Power series on (-1, 0), continued fraction on (-inf, -1].
/// Throws for x >= 0 (not needed by any in-scope formula).
double expint_ei(double x);

/// Lower incomplete gamma gamma(s, x), s > 0, x >= 0 (non-regularized).
double lower_gamma(double s, double x);

/// Regularized P(s, x) = gamma(s, x) / Gamma(s) in [0, 1].
double reg_lower_gamma(double s, double x);

/// Digamma psi(x), x > 0; recurrence to x >= 6 then asymptotic series.
double digamma(double x);

/// Normalized exponential-weighted Cauchy moments
///   J_k(a) = (1/k!) * Integral_0^inf u^k e^{-u} / (u + a) du,  a > 0,
/// returned for k = 0..k_max. These are the increments of the Gamma
/// log-expectation: for X ~ Gamma(n, theta) and a = 1/(snr*theta),
///   E[ln(1 + snr*X)] = sum_{k=0}^{n-1} J_k(a).
/// Evaluated by the recurrence J_k = (1 - a J_{k-1}) / k, seeded at k = 0
/// for small a and at the stable crossover k ~ a for large a.
std::vector<double> log_expectation_terms(double a, int k_max);

}  // namespace capa
