#include "binn/kernels.hpp"

#include <algorithm>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace binn::kernels {

namespace {

void check_shapes(const Matrix& g, const Matrix& phi, const Vector& y) {
    if (g.rows() != phi.rows() || phi.rows() != y.size()) {
        throw DimensionMismatch("normal equations: frozen factors, basis matrix and targets disagree on row count");
    }
}

void check_factors(const std::vector<Matrix>& factors) {
    for (const auto& f : factors) {
        if (f.rows() != factors.front().rows() || f.cols() != factors.front().cols()) {
            throw DimensionMismatch("frozen products: factor shapes differ");
        }
    }
}

}  // namespace

int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

Matrix kronecker_rows(const Matrix& g, const Matrix& phi) {
    if (g.rows() != phi.rows()) throw DimensionMismatch("kronecker_rows: row counts differ");
    const Eigen::Index modes = g.cols();
    const Eigen::Index j = phi.cols();
    Matrix x(phi.rows(), modes * j);
    for (Eigen::Index m = 0; m < modes; ++m) {
        x.middleCols(m * j, j) = phi.array().colwise() * g.col(m).array();
    }
    return x;
}

NormalEquations normal_equations_serial(const Matrix& g, const Matrix& phi, const Vector& y) {
    check_shapes(g, phi, y);
    const Matrix x = kronecker_rows(g, phi);
    return {x.transpose() * x, x.transpose() * y};
}

NormalEquations normal_equations(const Matrix& g, const Matrix& phi, const Vector& y) {
    check_shapes(g, phi, y);
    const Eigen::Index n = phi.rows();
    const Eigen::Index k = g.cols() * phi.cols();

    const auto segments = static_cast<Eigen::Index>(
        std::max<std::size_t>(1, std::min<std::size_t>(kSegments, static_cast<std::size_t>((n + 255) / 256))));
    const Eigen::Index seg_len = (n + segments - 1) / std::max<Eigen::Index>(segments, 1);

    std::vector<Matrix> grams(static_cast<std::size_t>(segments));
    std::vector<Vector> moments(static_cast<std::size_t>(segments));

#pragma omp parallel for schedule(dynamic, 1)
    for (Eigen::Index s = 0; s < segments; ++s) {
        const Eigen::Index begin = std::min(n, s * seg_len);
        const Eigen::Index rows = std::min(n, begin + seg_len) - begin;
        Matrix local = Matrix::Zero(k, k);
        Vector local_moment = Vector::Zero(k);
        if (rows > 0) {
            const Matrix xs = kronecker_rows(g.middleRows(begin, rows), phi.middleRows(begin, rows));
            local.selfadjointView<Eigen::Lower>().rankUpdate(xs.transpose());
            local_moment.noalias() = xs.transpose() * y.segment(begin, rows);
        }
        grams[static_cast<std::size_t>(s)] = std::move(local);
        moments[static_cast<std::size_t>(s)] = std::move(local_moment);
    }

    NormalEquations out{Matrix::Zero(k, k), Vector::Zero(k)};
    for (Eigen::Index s = 0; s < segments; ++s) {
        out.gram += grams[static_cast<std::size_t>(s)];
        out.moment += moments[static_cast<std::size_t>(s)];
    }
    out.gram = out.gram.selfadjointView<Eigen::Lower>();
    return out;
}

Matrix frozen_products_serial(const std::vector<Matrix>& factors, std::size_t skip) {
    if (factors.empty()) throw InvalidArgument("frozen products need at least one factor matrix");
    check_factors(factors);
    Matrix g = Matrix::Ones(factors.front().rows(), factors.front().cols());
    for (std::size_t l = 0; l < factors.size(); ++l) {
        if (l == skip) continue;
        g.array() *= factors[l].array();
    }
    return g;
}

Matrix frozen_products(const std::vector<Matrix>& factors, std::size_t skip) {
    if (factors.empty()) throw InvalidArgument("frozen products need at least one factor matrix");
    check_factors(factors);
    const Eigen::Index n = factors.front().rows();
    const Eigen::Index modes = factors.front().cols();
    Matrix g(n, modes);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index m = 0; m < modes; ++m) {
            double prod = 1.0;
            for (std::size_t l = 0; l < factors.size(); ++l) {
                if (l != skip) prod *= factors[l](i, m);
            }
            g(i, m) = prod;
        }
    }
    return g;
}

}  // namespace binn::kernels
