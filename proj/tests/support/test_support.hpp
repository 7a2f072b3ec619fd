#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "capa/config.hpp"
#include "capa/model.hpp"

namespace capa_test {

inline std::string defaults_path() {
    return std::string(CAPA_SOURCE_DIR) + "/configs/defaults.json";
}

inline capa::SystemConfig defaults() { return capa::load_config(defaults_path()); }

/// Shared model at the paper defaults; built once per test process.
inline const capa::IsacModel& default_model() {
    static const capa::IsacModel model = capa::build_model(defaults());
    return model;
}

/// Test-only adaptive Simpson integrator, independent of the library's
/// quadrature path (used as the brute-force oracle).
inline double oracle_integrate(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 50) {
    struct Impl {
        const std::function<double(double)>& f;
        double run(double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) const {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            const double delta = left + right - whole;
            if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
                return left + right + delta / 15.0;
            return run(a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
                   run(m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
        }
    } impl{f};
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return impl.run(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

}  // namespace capa_test
