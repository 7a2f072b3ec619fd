#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "capa/config.hpp"
#include "capa/rng.hpp"
#include "capa/spectral.hpp"

namespace capa {

/// Ratio below lambda_1 at which kernel eigenvalues stop being retained
/// for the channel-gain law (the full rule keeps max(DoF, census) modes).
inline constexpr double kRetentionRatio = 0.3;

/// Number of retained eigenvalues: max(DoF, |{n: lambda_n >= ratio*lambda_1}|).
int retained_count(const KernelSpectrum& spectrum);

/// xi_0 = 1; xi_m = (1/m) sum_{i=1}^m xi_{m-i} sum_n (1 - lambda_min/lambda_n)^i.
/// Requires lambdas sorted descending and strictly positive.
std::vector<double> xi_coefficients(const Eigen::VectorXd& lambdas, int m_count);

/// Hypoexponential law of g = sum_n lambda_n |Psi_n|^2 as a Gamma mixture:
/// pdf(x) = sum_m w_m Gamma(N+m, lambda_min)-density(x), with mixture
/// weights w_m = (lambda_min^N / prod lambda_n) xi_m. The xi series is
/// truncated adaptively (relative tail below 1e-14, hard cap 5000 terms).
class GainDistribution {
   public:
    explicit GainDistribution(Eigen::VectorXd lambdas_descending);

    double pdf(double x) const;
    double cdf(double x) const;
    double mean() const { return mean_; }
    /// E[ln g] = sum_m w_m (psi(N+m) + ln lambda_min).
    double mean_log() const;

    const Eigen::VectorXd& lambdas() const { return lambdas_; }
    double lambda_min() const { return lambda_min_; }
    const std::vector<double>& xi() const { return xi_; }
    const std::vector<double>& mixture_weights() const { return weights_; }

   private:
    Eigen::VectorXd lambdas_;
    double lambda_min_ = 0.0;
    double mean_ = 0.0;
    std::vector<double> xi_;
    std::vector<double> weights_;       // w_m, sums to 1
    std::vector<double> log_weights_;   // ln w_m (-inf for w_m = 0)
};

/// E[ln sum_n lambda_n |Psi_n|^2] for arbitrary positive weights. Uses the
/// Gamma-mixture series when it converges under the term cap, otherwise
/// the exact Frullani-integral route
///   E[ln g] = Integral_0^inf (e^{-t} - prod_n (1 + lambda_n t)^{-1})/t dt.
double hypoexp_mean_log(const Eigen::VectorXd& lambdas_descending);

/// Same integral route, exposed for cross-checks.
double hypoexp_mean_log_integral(const Eigen::VectorXd& lambdas_descending);

/// Projections of the sensing channel on the retained eigenfunctions:
/// c_n = Integral phi_n(z) hs^*(z) dz (node quadrature).
Eigen::VectorXcd sensing_projections(const KernelSpectrum& spectrum, const Vec3& target,
                                     int count);

/// Xi = Integral Integral hs(z) R_c(z,z') hs^*(z') dz dz'  (double node
/// quadrature; equals sum_n lambda_n |c_n|^2 over the full spectrum).
double xi_capital(const SystemConfig& cfg, const KernelSpectrum& spectrum);

/// Same bilinear form against a caller-supplied symmetric kernel; the
/// identity kernel (delta) reduces it to the plain aperture gain.
double xi_capital_with_kernel(const KernelSpectrum& spectrum, const Vec3& target,
                              const std::function<double(double, double)>& kernel);

/// One KL draw of the fading field restricted to the retained modes,
/// with the derived pair (g_c, rho) sharing the same Psi coefficients.
struct FadingRealization {
    Eigen::VectorXcd psi;       // i.i.d. CN(0,1)
    double g_c = 0.0;           // sum lambda_n |Psi_n|^2
    std::complex<double> rho;   // sum sqrt(lambda_n) c_n Psi_n
};

FadingRealization sample_realization(CounterRng& rng, const Eigen::VectorXd& lambdas,
                                     const Eigen::VectorXcd& projections);

/// Spectrum of the rank-one-updated kernel
///   Q = S (I + c h h^H) S,  c = L alpha_s snr_s G_r,
/// with S the square root of the kernel restricted to the retained modes.
/// Computed in the retained eigenbasis, where Q is the N x N matrix
/// Lambda^{1/2} (I + c c_vec c_vec^H) Lambda^{1/2}; its eigenvalues are
/// exactly the law weights of g_c + c |rho|^2.
struct QSpectrum {
    Eigen::VectorXd nu;  // descending, >= 0
    int dof_q = 0;       // census at the retention threshold of the base spectrum
};

QSpectrum q_spectrum(const SystemConfig& cfg, const KernelSpectrum& spectrum);

/// Test hook: assemble Q in the weighted node basis (T x T) instead of the
/// retained eigenbasis; nonzero eigenvalues agree with q_spectrum.
Eigen::VectorXd q_spectrum_node_basis(const SystemConfig& cfg, const KernelSpectrum& spectrum);

}  // namespace capa
