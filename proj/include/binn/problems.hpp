#pragma once

// Data generators for the benchmark problems: a noisy 1D test function, a
// parametric Poisson problem with a closed-form solution, and a parametric
// transient heat problem solved by finite differences.

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include <json.hpp>

#include "binn/core.hpp"

namespace binn::problems {

// 1D synthetic ------------------------------------------------------------------

inline constexpr double kSyntheticNoiseVariance = 0.04;

/// sin(3x) + 0.3 cos(9x)
[[nodiscard]] double synthetic_1d_function(double x);

/// N points with x ~ U[-1, 1] and targets f(x) + N(0, 0.04) (noise optional).
[[nodiscard]] Dataset synthetic_1d(std::size_t n, std::uint64_t seed, bool noise = true);

// Poisson ---------------------------------------------------------------------

/// -Δu = f on [0,1]^3 with homogeneous Dirichlet data, forcing a fixed sum of three
/// separable sine modes scaled by the parameter p.
struct PoissonSpec {
    std::array<std::array<int, 3>, 3> modes{{{2, 3, 2}, {4, 1, 3}, {5, 5, 2}}};
    std::array<double, 3> coefficients{1.0, 0.8, 1.2};
};

[[nodiscard]] double poisson_forcing(const std::array<double, 3>& x, double p, const PoissonSpec& spec = {});
[[nodiscard]] double poisson_solution(const std::array<double, 3>& x, double p, const PoissonSpec& spec = {});

/// Single term r of the solution (for separability checks).
[[nodiscard]] double poisson_term(const std::array<double, 3>& x, double p, std::size_t r, const PoissonSpec& spec = {});

/// Tensor grid of `grid` points per axis over [0,1]^3 (x1 slowest).
[[nodiscard]] Matrix poisson_grid(std::size_t grid);

/// Rows (x1, x2, x3, p) -> u for one parameter value.
[[nodiscard]] Dataset poisson_dataset(std::size_t grid, double p, const PoissonSpec& spec = {});

/// One dataset per parameter value.
[[nodiscard]] std::map<double, Dataset> poisson_datasets(std::size_t grid, const std::vector<double>& ps,
                                                         const PoissonSpec& spec = {});

// Heat ------------------------------------------------------------------------

/// u_t = k Δu + b(x, P) on [0,1]^2 x (0, T], u = 0 on the boundary and at t = 0, with
/// b a sum of Gaussian sources P exp(-2 |x - x_i|^2 / r0^2).
struct HeatSpec {
    double conductivity = 1.0;  // k in [1, 4]
    double power = 100.0;       // P in [100, 200]
    double source_width = 0.05;
    std::vector<std::array<double, 2>> sources = default_sources();
    std::size_t nx = 41;
    std::size_t ny = 41;
    std::size_t snapshots = 13;          // saved time levels t = T s / snapshots, s = 1..snapshots
    std::size_t steps_per_snapshot = 4;  // backward-Euler steps between saved levels
    double final_time = 0.04;

    /// 16 centers on the lattice {0.2, 0.4, 0.6, 0.8}^2.
    static std::vector<std::array<double, 2>> default_sources();

    /// Throws InvalidArgument for out-of-range parameters or grids.
    void validate() const;
};

inline constexpr double kHeatConductivityMin = 1.0;
inline constexpr double kHeatConductivityMax = 4.0;
inline constexpr double kHeatPowerMin = 100.0;
inline constexpr double kHeatPowerMax = 200.0;

[[nodiscard]] double heat_source(const HeatSpec& spec, double x, double y);

/// Temperature fields at the saved time levels; each field is nx*ny, index i*ny + j for node (x_i, y_j).
struct HeatSolution {
    std::vector<double> times;
    std::vector<Vector> fields;
    std::size_t nx = 0;
    std::size_t ny = 0;
};

/// Backward Euler in time, 5-point Laplacian in space, one sparse LDLT factorization reused per step.
[[nodiscard]] HeatSolution heat_fields(const HeatSpec& spec);

/// Rows (x, y, t, k, P) -> u for every node and saved time level.
[[nodiscard]] Dataset heat_solve(const HeatSpec& spec);
[[nodiscard]] Dataset heat_dataset(const HeatSpec& spec, const HeatSolution& solution);

/// Spatio-temporal sample points (x, y, t) in the order heat_dataset emits them.
[[nodiscard]] Matrix heat_grid(const HeatSpec& spec);

/// Metadata sidecar: spec, grid, scheme and source centers.
[[nodiscard]] nlohmann::ordered_json heat_metadata(const HeatSpec& spec);

}  // namespace binn::problems
