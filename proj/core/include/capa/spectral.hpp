#pragma once

#include <Eigen/Dense>

#include "capa/config.hpp"
#include "capa/quadrature.hpp"

namespace capa {

/// sin(k0 (z - z')) / (k0 (z - z')); the removable singularity is handled
/// by a short series below |arg| = 1e-4.
double sinc_kernel(double z, double zp, double k0);

/// Eigen-decomposition of the sinc autocorrelation kernel on the transmit
/// aperture, discretized with Gauss-Legendre quadrature (symmetrized
/// D^{1/2} R D^{1/2} form). Eigenvalues descend, clipped at zero.
struct KernelSpectrum {
    Eigen::VectorXd nodes;         // z_t inside the transmit interval
    Eigen::VectorXd node_weights;  // (L_t/2) * omega_t
    Eigen::VectorXd eigenvalues;   // lambda_n [m], descending
    Eigen::VectorXd normalized;    // eps_n = (k0/pi) lambda_n
    Eigen::MatrixXd eigvec_nodes;  // column n holds phi_n(z_t)
    double k0 = 0.0;
    double tx_length = 0.0;
    int dof = 0;

    int order() const { return static_cast<int>(nodes.size()); }
};

/// Effective degrees of freedom round(2 L_t / lambda), half-up, floor 1.
int dof(const SystemConfig& cfg);

/// Builds the spectrum at cfg.quadrature_order (requires T >= 4*DoF).
KernelSpectrum build_spectrum(const SystemConfig& cfg);

/// |{n : eps_n > threshold}| for threshold in (0, 1).
int polarization_census(const KernelSpectrum& spectrum, double threshold);

/// Nystrom extension of phi_n off the quadrature nodes:
/// phi_n(z) = (1/lambda_n) sum_t w_t R(z, z_t) phi_n(z_t).
/// Rejects modes with lambda_n below 1e-12 * lambda_1.
double eigenfunction_interp(const KernelSpectrum& spectrum, int n, double z);

}  // namespace capa
