#pragma once

#include <variant>
#include <vector>

#include "binn/basis.hpp"
#include "binn/core.hpp"

namespace binn {

/// Squared-exponential kernel sigma_f^2 exp(-|x - x'|^2 / (2 l^2)).
struct RbfKernel {
    double signal_variance = 1.0;
    double length_scale = 1.0;
};

/// Product kernel prod_d ( sigma_w^2 * sum_j phi_dj(x_d) phi_dj(x'_d) ): the infinite-mode
/// covariance of a B-INN prior, and the exact covariance of a single-mode 1D one.
struct BinnProductKernel {
    std::vector<BasisSpec> bases;
    double prior_variance = 1.0;
};

using Kernel = std::variant<RbfKernel, BinnProductKernel>;

[[nodiscard]] double kernel_eval(const Kernel& k, const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& xp);

/// Gram matrix K(a_i, b_j).
[[nodiscard]] Matrix kernel_matrix(const Kernel& k, const Matrix& a, const Matrix& b);

struct GpPrediction {
    Vector means;
    Vector variances;
};

/// Exact GP regression with a zero prior mean. Inputs are used as given (no scaling).
[[nodiscard]] GpPrediction gp_fit_predict(const Kernel& k, const Dataset& train, const Matrix& test_inputs,
                                          double noise_variance, bool include_noise = false, double jitter = 1e-10);

}  // namespace binn
