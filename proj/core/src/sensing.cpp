#include "capa/sensing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "capa/quadrature.hpp"

namespace capa {

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;

double radial_cross_section(const Vec3& p) {
    const double s2 = p.x * p.x + p.y * p.y;
    if (s2 <= 0.0) throw std::invalid_argument("target on array axis");
    return std::sqrt(s2);
}
}  // namespace

double axis_distance(double z, const Vec3& p) {
    return std::sqrt(z * z - 2.0 * p.z * z + p.x * p.x + p.y * p.y + p.z * p.z);
}

std::complex<double> h_s_eval(double z, const Vec3& p, double k0) {
    const double r = axis_distance(z, p);
    if (!(r > 0.0)) throw std::invalid_argument("singular propagation distance");
    return std::polar(1.0 / (std::sqrt(kFourPi) * r), -k0 * r);
}

double aperture_gain_closed(const ApertureInterval& interval, const Vec3& p) {
    const double s = radial_cross_section(p);
    const double zeta =
        std::atan((interval.hi - p.z) / s) - std::atan((interval.lo - p.z) / s);
    return zeta / (kFourPi * s);
}

double aperture_gain_quadrature(const ApertureInterval& interval, const Vec3& p, int order) {
    radial_cross_section(p);  // reject on-axis targets up front
    const auto rule = map_rule(gauss_legendre(order), interval.lo, interval.hi);
    return integrate(rule, [&](double z) {
        const double r2 = z * z - 2.0 * p.z * z + p.x * p.x + p.y * p.y + p.z * p.z;
        return 1.0 / (kFourPi * r2);
    });
}

}  // namespace capa
