#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "binn/core.hpp"

namespace binn::test {

inline std::filesystem::path tmp_path(const std::string& name) {
    return std::filesystem::path(BINN_TEST_TMPDIR) / name;
}

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, double lo = -1.0,
                            double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = u(rng);
    }
    return m;
}

inline Vector random_vector(std::mt19937_64& rng, Eigen::Index n, double lo = -1.0, double hi = 1.0) {
    return random_matrix(rng, n, 1, lo, hi).col(0);
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace binn::test
