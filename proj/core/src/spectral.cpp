#include "capa/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace capa {

double sinc_kernel(double z, double zp, double k0) {
    const double x = k0 * (z - zp);
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

int dof(const SystemConfig& cfg) {
    const double raw = 2.0 * cfg.tx_length / cfg.wavelength;
    const int rounded = static_cast<int>(std::floor(raw + 0.5));  // round half up
    return std::max(1, rounded);
}

KernelSpectrum build_spectrum(const SystemConfig& cfg) {
    cfg.validate();
    const int T = cfg.quadrature_order;
    const int n_dof = dof(cfg);
    if (T < 4 * n_dof)
        throw std::invalid_argument("quadrature_order must be >= 4*DoF for a resolved spectrum");

    const auto iv = tx_interval(cfg);
    const auto rule = map_rule(gauss_legendre(T), iv.lo, iv.hi);
    const double k0 = cfg.wavenumber();

    Eigen::VectorXd z = Eigen::Map<const Eigen::VectorXd>(rule.nodes.data(), T);
    Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), T);
    Eigen::VectorXd sw = w.array().sqrt();

    // Symmetrized Nystrom matrix A = D^{1/2} R D^{1/2}; same spectrum as
    // Z = R D but guaranteed real and (up to round-off) nonnegative.
    Eigen::MatrixXd A(T, T);
    for (int i = 0; i < T; ++i) {
        A(i, i) = w(i);
        for (int j = 0; j < i; ++j) {
            const double v = sinc_kernel(z(i), z(j), k0) * sw(i) * sw(j);
            A(i, j) = v;
            A(j, i) = v;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("kernel eigen-solver failed to converge");

    KernelSpectrum spec;
    spec.nodes = std::move(z);
    spec.node_weights = std::move(w);
    spec.k0 = k0;
    spec.tx_length = cfg.tx_length;
    spec.dof = n_dof;

    // Eigen returns ascending order; flip and clip round-off negatives.
    spec.eigenvalues = solver.eigenvalues().reverse().cwiseMax(0.0);
    spec.normalized = spec.eigenvalues * (k0 / std::numbers::pi);
    spec.eigvec_nodes = solver.eigenvectors().rowwise().reverse();
    for (int i = 0; i < T; ++i) spec.eigvec_nodes.row(i) /= sw(i);
    return spec;
}

int polarization_census(const KernelSpectrum& spectrum, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("census threshold must be in (0, 1)");
    return static_cast<int>((spectrum.normalized.array() > threshold).count());
}

double eigenfunction_interp(const KernelSpectrum& spectrum, int n, double z) {
    const int T = spectrum.order();
    if (n < 0 || n >= T) throw std::invalid_argument("eigenfunction index out of range");
    const double lam = spectrum.eigenvalues(n);
    if (lam < 1e-12 * spectrum.eigenvalues(0))
        throw std::invalid_argument("eigenfunction_interp: eigenvalue too small to extend");
    double acc = 0.0;
    for (int t = 0; t < T; ++t)
        acc += spectrum.node_weights(t) * sinc_kernel(z, spectrum.nodes(t), spectrum.k0) *
               spectrum.eigvec_nodes(t, n);
    return acc / lam;
}

}  // namespace capa
