#pragma once

#include <complex>

#include "capa/config.hpp"

namespace capa {

/// Spherical-wave channel amplitude from aperture point (0,0,z) to p:
/// e^{-j k0 r} / (sqrt(4 pi) r),  r = sqrt(z^2 - 2 p_z z + |p|^2).
std::complex<double> h_s_eval(double z, const Vec3& p, double k0);

/// Distance from (0,0,z) to p.
double axis_distance(double z, const Vec3& p);

/// Closed-form aperture gain G = zeta(lo,hi) / (4 pi sqrt(p_x^2+p_y^2)),
/// zeta(x,y) = atan((y-p_z)/s) - atan((x-p_z)/s). Throws for on-axis p.
double aperture_gain_closed(const ApertureInterval& interval, const Vec3& p);

/// Gauss-Legendre integration of |h_s|^2 over the interval; converges to
/// the closed form as the order grows.
double aperture_gain_quadrature(const ApertureInterval& interval, const Vec3& p, int order);

}  // namespace capa
