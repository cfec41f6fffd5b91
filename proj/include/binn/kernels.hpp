#pragma once

// Row-parallel kernels behind the block updates.
//
// Every kernel has a `*_serial` reference that builds the textbook object
// directly (e.g. the explicit Kronecker design matrix) and an OpenMP version
// used by the library. The OpenMP versions partition rows into a fixed number
// of segments and reduce in segment order, so results are bitwise identical
// for any thread count.

#include <cstddef>
#include <vector>

#include "binn/core.hpp"

namespace binn::kernels {

/// X^T X and X^T y for the Kronecker design matrix X (rows g_i ⊗ phi_i).
struct NormalEquations {
    Matrix gram;    // (M*J) x (M*J), symmetric
    Vector moment;  // M*J
};

/// Design matrix rows g_i ⊗ phi_i in mode-major order: [g_i1 phi_i, g_i2 phi_i, ...].
[[nodiscard]] Matrix kronecker_rows(const Matrix& g, const Matrix& phi);

/// Materializes X and forms X^T X, X^T y.
[[nodiscard]] NormalEquations normal_equations_serial(const Matrix& g, const Matrix& phi, const Vector& y);

/// Same quantities without materializing X; OpenMP over row segments.
[[nodiscard]] NormalEquations normal_equations(const Matrix& g, const Matrix& phi, const Vector& y);

/// Entry (i, m) = prod over l != skip of factors[l](i, m). `skip` may be out of range to include all.
[[nodiscard]] Matrix frozen_products_serial(const std::vector<Matrix>& factors, std::size_t skip);
[[nodiscard]] Matrix frozen_products(const std::vector<Matrix>& factors, std::size_t skip);

/// Threads OpenMP would use (1 without OpenMP).
[[nodiscard]] int max_threads();

/// Number of fixed row segments the reductions use.
inline constexpr std::size_t kSegments = 64;

}  // namespace binn::kernels
