#include "binn/problems.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace binn::problems {

double synthetic_1d_function(double x) { return std::sin(3.0 * x) + 0.3 * std::cos(9.0 * x); }

Dataset synthetic_1d(std::size_t n, std::uint64_t seed, bool noise) {
    if (n < 1) throw InvalidArgument("synthetic_1d: need at least one point");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    std::normal_distribution<double> normal(0.0, std::sqrt(kSyntheticNoiseVariance));
    Matrix x(static_cast<Eigen::Index>(n), 1);
    Vector y(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, 0) = uniform(rng);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        y(i) = synthetic_1d_function(x(i, 0));
        if (noise) y(i) += normal(rng);
    }
    return Dataset(std::move(x), std::move(y));
}

// Poisson ---------------------------------------------------------------------

double poisson_term(const std::array<double, 3>& x, double p, std::size_t r, const PoissonSpec& spec) {
    constexpr double pi = std::numbers::pi;
    const auto& m = spec.modes.at(r);
    double sum_sq = 0.0;
    double prod = 1.0;
    for (std::size_t j = 0; j < 3; ++j) {
        sum_sq += static_cast<double>(m[j] * m[j]);
        prod *= std::sin(pi * m[j] * x[j]);
    }
    return spec.coefficients[r] * p / (pi * pi * sum_sq) * prod;
}

double poisson_solution(const std::array<double, 3>& x, double p, const PoissonSpec& spec) {
    double u = 0.0;
    for (std::size_t r = 0; r < 3; ++r) u += poisson_term(x, p, r, spec);
    return u;
}

double poisson_forcing(const std::array<double, 3>& x, double p, const PoissonSpec& spec) {
    constexpr double pi = std::numbers::pi;
    double f = 0.0;
    for (std::size_t r = 0; r < 3; ++r) {
        double prod = 1.0;
        for (std::size_t j = 0; j < 3; ++j) prod *= std::sin(pi * spec.modes[r][j] * x[j]);
        f += spec.coefficients[r] * p * prod;
    }
    return f;
}

Matrix poisson_grid(std::size_t grid) {
    if (grid < 2) throw InvalidArgument("poisson grid needs at least 2 points per axis");
    const auto g = static_cast<Eigen::Index>(grid);
    Matrix pts(g * g * g, 3);
    const double h = 1.0 / static_cast<double>(grid - 1);
    Eigen::Index row = 0;
    for (Eigen::Index a = 0; a < g; ++a) {
        for (Eigen::Index b = 0; b < g; ++b) {
            for (Eigen::Index c = 0; c < g; ++c) {
                pts(row, 0) = a == g - 1 ? 1.0 : h * static_cast<double>(a);
                pts(row, 1) = b == g - 1 ? 1.0 : h * static_cast<double>(b);
                pts(row, 2) = c == g - 1 ? 1.0 : h * static_cast<double>(c);
                ++row;
            }
        }
    }
    return pts;
}

Dataset poisson_dataset(std::size_t grid, double p, const PoissonSpec& spec) {
    const Matrix pts = poisson_grid(grid);
    Matrix x(pts.rows(), 4);
    Vector y(pts.rows());
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
        x.row(i) << pts(i, 0), pts(i, 1), pts(i, 2), p;
        y(i) = poisson_solution({pts(i, 0), pts(i, 1), pts(i, 2)}, p, spec);
    }
    return Dataset(std::move(x), std::move(y));
}

std::map<double, Dataset> poisson_datasets(std::size_t grid, const std::vector<double>& ps, const PoissonSpec& spec) {
    std::map<double, Dataset> out;
    for (double p : ps) out.emplace(p, poisson_dataset(grid, p, spec));
    return out;
}

}  // namespace binn::problems
