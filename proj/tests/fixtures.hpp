#pragma once

// Randomly parameterized models and an independent Monte Carlo variance oracle.

#include <cmath>
#include <random>

#include "binn/basis.hpp"
#include "binn/model.hpp"

namespace binn::test {

/// Model with random centers, means and a dense random SPD covariance per dimension
/// (including cross-mode coupling, which predictive variance must ignore).
inline BinnModel random_model(std::mt19937_64& rng, std::size_t dims, std::size_t modes,
                              const std::vector<std::size_t>& basis_counts, double cov_scale = 0.05) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> n(0.0, 1.0);
    BinnModel m;
    m.config.modes = modes;
    m.config.basis_counts = basis_counts;
    m.config.length_scales.assign(dims, 0.3);
    m.config.noise_variance = 0.01;
    m.scaler = Scaler(std::vector<double>(dims, 0.0), std::vector<double>(dims, 1.0));
    for (std::size_t d = 0; d < dims; ++d) {
        std::vector<double> centers(basis_counts[d]);
        for (auto& c : centers) c = u(rng);
        m.bases.emplace_back(centers, 0.2 + 0.3 * u(rng));
        const auto k = static_cast<Eigen::Index>(basis_counts[d] * modes);
        DimensionPosterior post;
        post.prior_mean = Vector::Zero(k);
        post.mean.resize(k);
        for (Eigen::Index i = 0; i < k; ++i) post.mean(i) = n(rng);
        Matrix a(k, k);
        for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = n(rng);
        post.covariance = cov_scale * (a * a.transpose() / static_cast<double>(k) + 0.1 * Matrix::Identity(k, k));
        m.posteriors.push_back(std::move(post));
    }
    return m;
}

struct MonteCarloEstimate {
    double mean = 0.0;
    double variance = 0.0;
    double variance_std_error = 0.0;
};

/// Draws each (d, m) weight block w ~ N(mean block, covariance block) with its own
/// Cholesky factor and evaluates sum_m prod_d phi_d^T w directly.
inline MonteCarloEstimate monte_carlo_variance(const BinnModel& model, const Vector& x, std::size_t samples,
                                               std::uint64_t seed) {
    const std::size_t dims = model.dims();
    const std::size_t modes = model.modes();
    std::vector<Vector> phi(dims);
    std::vector<Matrix> chol(dims * modes);
    std::vector<Vector> mean(dims * modes);
    for (std::size_t d = 0; d < dims; ++d) {
        phi[d] = eval_basis(model.bases[d], x(static_cast<Eigen::Index>(d)));
        const auto j = static_cast<Eigen::Index>(model.bases[d].size());
        for (std::size_t m = 0; m < modes; ++m) {
            const auto off = static_cast<Eigen::Index>(m) * j;
            const Matrix block = model.posteriors[d].covariance.block(off, off, j, j);
            chol[d * modes + m] = Eigen::LLT<Matrix>(block).matrixL();
            mean[d * modes + m] = model.posteriors[d].mean.segment(off, j);
        }
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<double> ys(samples);
    for (std::size_t s = 0; s < samples; ++s) {
        double y = 0.0;
        for (std::size_t m = 0; m < modes; ++m) {
            double prod = 1.0;
            for (std::size_t d = 0; d < dims; ++d) {
                const auto& l = chol[d * modes + m];
                Vector z(l.rows());
                for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = n(rng);
                const Vector w = mean[d * modes + m] + l * z;
                prod *= phi[d].dot(w);
            }
            y += prod;
        }
        ys[s] = y;
    }
    MonteCarloEstimate est;
    for (double y : ys) est.mean += y;
    est.mean /= static_cast<double>(samples);
    double m2 = 0.0, m4 = 0.0;
    for (double y : ys) {
        const double c = (y - est.mean) * (y - est.mean);
        m2 += c;
        m4 += c * c;
    }
    m2 /= static_cast<double>(samples);
    m4 /= static_cast<double>(samples);
    est.variance = m2 * static_cast<double>(samples) / static_cast<double>(samples - 1);
    est.variance_std_error = std::sqrt(std::max(0.0, m4 - m2 * m2) / static_cast<double>(samples));
    return est;
}

}  // namespace binn::test
