#include "capa/fading.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "capa/sensing.hpp"
#include "capa/special_functions.hpp"

namespace capa {

namespace {
constexpr int kXiCap = 5000;
constexpr double kXiTailTol = 1e-14;
}  // namespace

int retained_count(const KernelSpectrum& spectrum) {
    const double floor = kRetentionRatio * spectrum.eigenvalues(0);
    const int census = static_cast<int>((spectrum.eigenvalues.array() >= floor).count());
    return std::max(spectrum.dof, census);
}

std::vector<double> xi_coefficients(const Eigen::VectorXd& lambdas, int m_count) {
    const int n = static_cast<int>(lambdas.size());
    if (n == 0) throw std::invalid_argument("xi_coefficients: empty eigenvalue set");
    for (int i = 0; i < n; ++i) {
        if (!(lambdas(i) > 0.0))
            throw std::invalid_argument("xi_coefficients: eigenvalues must be positive");
        if (i > 0 && lambdas(i) > lambdas(i - 1) * (1.0 + 1e-12))
            throw std::invalid_argument("xi_coefficients: eigenvalues must descend");
    }
    const double lmin = lambdas(n - 1);
    std::vector<double> xi(static_cast<std::size_t>(m_count) + 1);
    xi[0] = 1.0;
    if (m_count == 0) return xi;

    // S_i = sum_n (1 - lambda_min/lambda_n)^i, accumulated incrementally.
    Eigen::VectorXd q = 1.0 - lmin / lambdas.array();
    Eigen::VectorXd qpow = Eigen::VectorXd::Ones(n);
    std::vector<double> S(static_cast<std::size_t>(m_count) + 1, 0.0);
    for (int i = 1; i <= m_count; ++i) {
        qpow.array() *= q.array();
        S[i] = qpow.sum();
    }
    for (int m = 1; m <= m_count; ++m) {
        double acc = 0.0;
        for (int i = 1; i <= m; ++i) acc += xi[m - i] * S[i];
        xi[m] = acc / m;
    }
    return xi;
}

GainDistribution::GainDistribution(Eigen::VectorXd lambdas_descending)
    : lambdas_(std::move(lambdas_descending)) {
    const int n = static_cast<int>(lambdas_.size());
    if (n == 0) throw std::invalid_argument("GainDistribution: empty eigenvalue set");
    lambda_min_ = lambdas_(n - 1);
    if (!(lambda_min_ > 0.0))
        throw std::invalid_argument("GainDistribution: eigenvalues must be positive");
    mean_ = lambdas_.sum();

    // Grow the xi series until the mixture weights have negligible tail.
    const double log_pref = n * std::log(lambda_min_) - lambdas_.array().log().sum();
    Eigen::VectorXd q = 1.0 - lambda_min_ / lambdas_.array();
    Eigen::VectorXd qpow = Eigen::VectorXd::Ones(n);
    xi_.assign(1, 1.0);
    weights_.assign(1, std::exp(log_pref));
    std::vector<double> S(1, 0.0);
    double cum = weights_[0];
    double peak = weights_[0];
    for (int m = 1; m <= kXiCap; ++m) {
        qpow.array() *= q.array();
        S.push_back(qpow.sum());
        double acc = 0.0;
        for (int i = 1; i <= m; ++i) acc += xi_[m - i] * S[i];
        const double xim = acc / m;
        if (!std::isfinite(xim))
            throw std::runtime_error("GainDistribution: xi recursion overflowed");
        xi_.push_back(xim);
        const double w = std::exp(log_pref) * xim;
        weights_.push_back(w);
        cum += w;
        peak = std::max(peak, w);
        if (m > 8 && w < kXiTailTol * peak && cum > 1.0 - 1e-12) break;
    }
    if (cum < 1.0 - 1e-9)
        throw std::runtime_error(
            "GainDistribution: xi series did not converge within the term cap");
    log_weights_.resize(weights_.size());
    for (std::size_t m = 0; m < weights_.size(); ++m)
        log_weights_[m] = weights_[m] > 0.0 ? std::log(weights_[m])
                                            : -std::numeric_limits<double>::infinity();
}

double GainDistribution::pdf(double x) const {
    if (!(x >= 0.0)) throw std::invalid_argument("pdf requires x >= 0");
    const int n = static_cast<int>(lambdas_.size());
    if (x == 0.0) return n >= 2 ? 0.0 : weights_[0] / lambda_min_;
    const double lx = std::log(x);
    const double ll = std::log(lambda_min_);
    double acc = 0.0;
    for (std::size_t m = 0; m < weights_.size(); ++m) {
        if (weights_[m] <= 0.0) continue;
        const double shape = n + static_cast<double>(m);
        const double lt = log_weights_[m] + (shape - 1.0) * lx - x / lambda_min_ -
                          shape * ll - std::lgamma(shape);
        acc += std::exp(lt);
    }
    return acc;
}

double GainDistribution::cdf(double x) const {
    if (!(x >= 0.0)) throw std::invalid_argument("cdf requires x >= 0");
    if (x == 0.0) return 0.0;
    const int n = static_cast<int>(lambdas_.size());
    const double u = x / lambda_min_;
    double acc = 0.0;
    for (std::size_t m = 0; m < weights_.size(); ++m) {
        if (weights_[m] <= 0.0) continue;
        acc += weights_[m] * reg_lower_gamma(n + static_cast<double>(m), u);
    }
    return std::min(acc, 1.0);
}

double GainDistribution::mean_log() const {
    const int n = static_cast<int>(lambdas_.size());
    const double ll = std::log(lambda_min_);
    double acc = 0.0;
    for (std::size_t m = 0; m < weights_.size(); ++m) {
        if (weights_[m] <= 0.0) continue;
        acc += weights_[m] * (digamma(n + static_cast<double>(m)) + ll);
    }
    return acc;
}

namespace {

// Deterministic adaptive Simpson.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double hypoexp_mean_log_integral(const Eigen::VectorXd& lambdas) {
    const int n = static_cast<int>(lambdas.size());
    if (n == 0) throw std::invalid_argument("hypoexp_mean_log: empty eigenvalue set");
    const double sum = lambdas.sum();
    const auto integrand = [&](double t) {
        if (t < 1e-12) return sum - 1.0;  // limit of (e^{-t} - prod^{-1})/t
        double prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= 1.0 + lambdas(i) * t;
        return (std::exp(-t) - 1.0 / prod) / t;
    };
    const double t0 = 60.0;
    double value = integrate_adaptive(integrand, 0.0, t0, 1e-13 * (1.0 + std::abs(sum)));
    // Tail of the product term via u = 1/t: integral of u^{n-1}/prod(u+lambda).
    const auto tail = [&](double u) {
        double log_num = (n - 1) * std::log(std::max(u, 1e-300));
        double log_den = 0.0;
        for (int i = 0; i < n; ++i) log_den += std::log(u + lambdas(i));
        return std::exp(log_num - log_den);
    };
    value -= integrate_adaptive(tail, 0.0, 1.0 / t0, 1e-14);
    // Tail of e^{-t}/t is E1(t0), below 1e-28 at t0 = 60.
    return value;
}

double hypoexp_mean_log(const Eigen::VectorXd& lambdas) {
    const int n = static_cast<int>(lambdas.size());
    if (n == 0) throw std::invalid_argument("hypoexp_mean_log: empty eigenvalue set");
    if (n == 1) return std::log(lambdas(0)) - kEulerGamma;
    // The Gamma-mixture series needs roughly sum(lambda)/lambda_min terms;
    // switch to the integral route when that exceeds the cap.
    const double lmin = lambdas(n - 1);
    if (!(lmin > 0.0)) throw std::invalid_argument("hypoexp_mean_log: nonpositive eigenvalue");
    if (lambdas.sum() / lmin > 0.5 * kXiCap) return hypoexp_mean_log_integral(lambdas);
    try {
        return GainDistribution(lambdas).mean_log();
    } catch (const std::runtime_error&) {
        return hypoexp_mean_log_integral(lambdas);
    }
}

Eigen::VectorXcd sensing_projections(const KernelSpectrum& spectrum, const Vec3& target,
                                     int count) {
    const int T = spectrum.order();
    count = std::min(count, T);
    Eigen::VectorXcd h(T);
    for (int t = 0; t < T; ++t) h(t) = h_s_eval(spectrum.nodes(t), target, spectrum.k0);
    Eigen::VectorXcd c(count);
    for (int nIdx = 0; nIdx < count; ++nIdx) {
        std::complex<double> acc = 0.0;
        for (int t = 0; t < T; ++t)
            acc += spectrum.node_weights(t) * spectrum.eigvec_nodes(t, nIdx) * std::conj(h(t));
        c(nIdx) = acc;
    }
    return c;
}

double xi_capital_with_kernel(const KernelSpectrum& spectrum, const Vec3& target,
                              const std::function<double(double, double)>& kernel) {
    const int T = spectrum.order();
    Eigen::VectorXcd v(T);
    for (int t = 0; t < T; ++t)
        v(t) = spectrum.node_weights(t) * h_s_eval(spectrum.nodes(t), target, spectrum.k0);
    std::complex<double> acc = 0.0;
    for (int i = 0; i < T; ++i) {
        acc += std::norm(v(i)) * kernel(spectrum.nodes(i), spectrum.nodes(i));
        for (int j = 0; j < i; ++j) {
            const double k = kernel(spectrum.nodes(i), spectrum.nodes(j));
            acc += k * (v(i) * std::conj(v(j)) + v(j) * std::conj(v(i)));
        }
    }
    return acc.real();
}

double xi_capital(const SystemConfig& cfg, const KernelSpectrum& spectrum) {
    return xi_capital_with_kernel(spectrum, cfg.target_pos, [&](double z1, double z2) {
        return sinc_kernel(z1, z2, spectrum.k0);
    });
}

FadingRealization sample_realization(CounterRng& rng, const Eigen::VectorXd& lambdas,
                                     const Eigen::VectorXcd& projections) {
    const int n = static_cast<int>(lambdas.size());
    FadingRealization out;
    out.psi.resize(n);
    out.rho = {0.0, 0.0};
    out.g_c = 0.0;
    for (int i = 0; i < n; ++i) {
        const std::complex<double> psi = rng.complex_gaussian();
        out.psi(i) = psi;
        out.g_c += lambdas(i) * std::norm(psi);
        out.rho += std::sqrt(lambdas(i)) * projections(i) * psi;
    }
    return out;
}

QSpectrum q_spectrum(const SystemConfig& cfg, const KernelSpectrum& spectrum) {
    const int n = retained_count(spectrum);
    const Eigen::VectorXd lam = spectrum.eigenvalues.head(n);
    const Eigen::VectorXcd c = sensing_projections(spectrum, cfg.target_pos, n);
    const double gr = aperture_gain_closed(rx_interval(cfg), cfg.target_pos);
    const double scale = cfg.frame_len * cfg.rcs_power * cfg.snr_sense * gr;

    const Eigen::VectorXd sq = lam.array().sqrt();
    Eigen::MatrixXcd B = lam.asDiagonal();
    B += scale * (sq.asDiagonal() * c) * (sq.asDiagonal() * c).adjoint();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(B);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("Q-kernel eigen-solver failed to converge");

    QSpectrum q;
    q.nu = solver.eigenvalues().reverse().cwiseMax(0.0);
    const double floor = kRetentionRatio * spectrum.eigenvalues(0);
    q.dof_q = static_cast<int>((q.nu.array() >= floor).count());
    return q;
}

Eigen::VectorXd q_spectrum_node_basis(const SystemConfig& cfg, const KernelSpectrum& spectrum) {
    const int T = spectrum.order();
    const int n = retained_count(spectrum);
    const double gr = aperture_gain_closed(rx_interval(cfg), cfg.target_pos);
    const double scale = cfg.frame_len * cfg.rcs_power * cfg.snr_sense * gr;

    // Weighted-basis eigenvectors v_n = D^{1/2} phi_n and node samples of hs.
    Eigen::VectorXd sw = spectrum.node_weights.array().sqrt();
    Eigen::MatrixXd V(T, n);
    for (int j = 0; j < n; ++j) V.col(j) = spectrum.eigvec_nodes.col(j).cwiseProduct(sw);
    Eigen::VectorXcd h(T);
    for (int t = 0; t < T; ++t)
        h(t) = sw(t) * h_s_eval(spectrum.nodes(t), cfg.target_pos, spectrum.k0);

    const Eigen::MatrixXd S =
        V * spectrum.eigenvalues.head(n).array().sqrt().matrix().asDiagonal() * V.transpose();
    Eigen::MatrixXcd Q = (S * S).cast<std::complex<double>>();
    const Eigen::VectorXcd sh = S * h;
    Q += scale * sh * sh.adjoint();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Q);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("Q-kernel eigen-solver failed to converge");
    return solver.eigenvalues().reverse().cwiseMax(0.0);
}

}  // namespace capa
