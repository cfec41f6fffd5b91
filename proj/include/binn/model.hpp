#pragma once

// Multi-dimensional B-INN: y(x) = sum_m prod_d phi_d(x_d)^T w_d^(m), with every
// per-dimension weight block treated as Gaussian and inferred by alternating
// Bayesian linear regression over dimensions.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "binn/basis.hpp"
#include "binn/blr.hpp"
#include "binn/core.hpp"

namespace binn {

/// Weight distribution of one input dimension, stacked mode-major:
/// [w^(1); w^(2); ...; w^(M)], each block of length J_d.
struct DimensionPosterior {
    Vector prior_mean;  // fixed mean of the isotropic block-update prior
    Vector mean;        // most recent posterior mean (frozen value for other dimensions)
    Matrix covariance;  // (M*J_d) x (M*J_d)
};

struct BinnModel {
    ModelConfig config;  // resolved: one basis count / length scale per dimension
    Scaler scaler;
    std::vector<BasisSpec> bases;
    std::vector<DimensionPosterior> posteriors;

    [[nodiscard]] std::size_t dims() const noexcept { return bases.size(); }
    [[nodiscard]] std::size_t modes() const noexcept { return config.modes; }
    [[nodiscard]] std::size_t basis_count(std::size_t d) const { return bases.at(d).size(); }

    /// J_d x M view of dimension d's posterior mean; column m is mode m.
    [[nodiscard]] Eigen::Map<const Matrix> mode_means(std::size_t d) const;

    /// Diagonal J_d x J_d block of dimension d's covariance belonging to mode m.
    [[nodiscard]] Matrix mode_covariance(std::size_t d, std::size_t m) const;
};

/// g_d: N x M matrix, entry (i, m) = prod_{l != d} phi_l(x_il)^T mean_l^(m).
struct FrozenFactors {
    Matrix values;
};

struct FitOptions {
    /// Fixed input scaling; fitted to the data when absent.
    std::optional<Scaler> scaler;
    /// Start from this model's posterior means (used as both the prior means and the
    /// initial frozen values). Must be structurally compatible.
    const BinnModel* warm_start = nullptr;
};

/// Per-sweep diagnostics from fit().
struct FitTrace {
    std::vector<double> train_rmse;
    std::size_t sweeps_run = 0;
    bool stopped_early = false;
};

/// Standard deviation of the seeded initial posterior means: sqrt(sigma_w^2) * M^(-1/(2D)).
[[nodiscard]] double initial_mean_std(double prior_variance, std::size_t modes, std::size_t dims);

/// Scaler, centers and prior. Posterior means start at seeded draws with standard
/// deviation sqrt(sigma_w^2) * M^(-1/(2D)); covariances start at sigma_w^2 I; prior
/// means are zero.
[[nodiscard]] BinnModel init_model(const ModelConfig& config, const Dataset& data, const FitOptions& options = {});

/// `d` is zero-based.
[[nodiscard]] FrozenFactors frozen_factors(const BinnModel& model, const Dataset& data, std::size_t d);

/// Kronecker-structured block design matrix, rows g_i ⊗ phi_i (mode-major).
[[nodiscard]] Matrix block_design_matrix(const FrozenFactors& g, const Matrix& phi);

/// One pass of block updates over dimensions 0..D-1, in place.
void sweep(BinnModel& model, const Dataset& data);

[[nodiscard]] BinnModel fit(const ModelConfig& config, const Dataset& data, const FitOptions& options = {},
                            FitTrace* trace = nullptr);

[[nodiscard]] double predict_mean(const BinnModel& model, const Eigen::Ref<const Vector>& x);

/// Epistemic variance sum_m [ prod_d (Var f_dm + E f_dm^2) - prod_d E f_dm^2 ] using the
/// per-mode diagonal covariance blocks; plus the noise variance when requested.
[[nodiscard]] double predict_variance(const BinnModel& model, const Eigen::Ref<const Vector>& x, bool include_noise);

struct BatchPrediction {
    Vector means;
    Vector variances;
};

/// Row-wise predict_mean / predict_variance; OpenMP over rows.
[[nodiscard]] BatchPrediction predict_batch(const BinnModel& model, const Matrix& x, bool include_noise);
[[nodiscard]] BatchPrediction predict_batch_serial(const BinnModel& model, const Matrix& x, bool include_noise);

/// Draws every (d, m) weight block independently from N(mean block, covariance block)
/// and evaluates the network at x, `count` times.
[[nodiscard]] std::vector<double> sample_predictions(const BinnModel& model, const Eigen::Ref<const Vector>& x,
                                                     std::size_t count, std::uint64_t seed);

/// Training RMSE of predict_mean.
[[nodiscard]] double training_rmse(const BinnModel& model, const Dataset& data);

// Persistence ----------------------------------------------------------------

inline constexpr int kModelFormatVersion = 1;

void save_model(const BinnModel& model, const std::filesystem::path& path);
[[nodiscard]] BinnModel load_model(const std::filesystem::path& path);

}  // namespace binn
