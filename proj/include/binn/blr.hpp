#pragma once

#include "binn/core.hpp"

namespace binn {

/// Isotropic Gaussian prior N(mean, variance * I).
struct GaussianPrior {
    Vector mean;
    double variance = 1.0;

    /// Zero-mean prior of dimension k.
    static GaussianPrior isotropic(Eigen::Index k, double variance);
};

/// Gaussian weight posterior.
struct BlrPosterior {
    Vector mean;
    Matrix covariance;

    [[nodiscard]] Eigen::Index size() const noexcept { return mean.size(); }
};

struct Predictive {
    double mean = 0.0;
    double variance = 0.0;
};

/// Jitter schedule shared by every SPD factorization in the library:
/// start at `initial`, multiply by 10 on failure, give up above 1e-4.
inline constexpr double kMaxJitter = 1e-4;

/// Cholesky of `a + jitter*I` with the escalation policy. Returns the jitter that succeeded.
/// Throws SingularSystem when every level fails.
double factorize_with_jitter(const Matrix& a, double initial_jitter, Eigen::LLT<Matrix>& llt);

/// Posterior from precomputed sufficient statistics: gram = X^T X, moment = X^T y.
///
/// Precision = gram / noise + I / prior.variance + jitter*I, solved by Cholesky.
[[nodiscard]] BlrPosterior posterior_from_normal_equations(const Matrix& gram, const Vector& moment,
                                                           const GaussianPrior& prior, double noise_variance,
                                                           double jitter);

/// Exact conjugate posterior for y = X w + eps, eps ~ N(0, noise_variance I).
[[nodiscard]] BlrPosterior posterior(const Matrix& x, const Vector& y, const GaussianPrior& prior,
                                     double noise_variance, double jitter = 1e-10);

/// Predictive mean phi^T mu and variance phi^T Sigma phi (+ noise when requested).
[[nodiscard]] Predictive predictive(const BlrPosterior& post, const Eigen::Ref<const Vector>& phi,
                                    double noise_variance, bool include_noise);

}  // namespace binn
