#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "binn/core.hpp"

namespace binn {

/// One-dimensional Gaussian basis: phi_j(x) = exp(-(x - c_j)^2 / (2 l^2)).
struct BasisSpec {
    std::vector<double> centers;
    double length_scale = 1.0;

    BasisSpec() = default;
    BasisSpec(std::vector<double> c, double l);

    [[nodiscard]] std::size_t size() const noexcept { return centers.size(); }
};

/// Basis evaluation vector at x (length J).
[[nodiscard]] Vector eval_basis(const BasisSpec& spec, double x);

/// Writes the J basis values at x into `out` (no allocation).
void eval_basis_into(const BasisSpec& spec, double x, std::span<double> out);

/// N x J matrix whose row i is eval_basis(spec, xs[i]).
[[nodiscard]] Matrix basis_matrix(const BasisSpec& spec, const Eigen::Ref<const Vector>& xs);

/// J points on [lo, hi] including both endpoints; the midpoint when J = 1.
[[nodiscard]] std::vector<double> equispaced_centers(std::size_t count, double lo, double hi);

/// Sorted distinct values of xs, merging values closer than `tol`.
[[nodiscard]] std::vector<double> unique_centers(const Eigen::Ref<const Vector>& xs, double tol = 1e-12);

}  // namespace binn
