#include <Eigen/Sparse>

#include <cmath>

#include "binn/problems.hpp"

namespace binn::problems {

std::vector<std::array<double, 2>> HeatSpec::default_sources() {
    std::vector<std::array<double, 2>> out;
    for (double x : {0.2, 0.4, 0.6, 0.8}) {
        for (double y : {0.2, 0.4, 0.6, 0.8}) out.push_back({x, y});
    }
    return out;
}

void HeatSpec::validate() const {
    // The solver accepts any k > 0 and P >= 0 (P = 0 is the trivial zero-field case);
    // the parametric domains [1,4] x [100,200] are enforced where candidate pools are built.
    if (!(conductivity > 0.0) || !std::isfinite(conductivity)) throw InvalidArgument("heat: conductivity must be > 0");
    if (!(power >= 0.0) || !std::isfinite(power)) throw InvalidArgument("heat: source power must be >= 0");
    if (!(source_width > 0.0)) throw InvalidArgument("heat: source width must be > 0");
    if (nx < 3 || ny < 3) throw InvalidArgument("heat: grid needs at least 3 nodes per axis");
    if (snapshots < 1 || steps_per_snapshot < 1) throw InvalidArgument("heat: need at least one time step");
    if (!(final_time > 0.0)) throw InvalidArgument("heat: final time must be > 0");
}

double heat_source(const HeatSpec& spec, double x, double y) {
    const double inv = 2.0 / (spec.source_width * spec.source_width);
    double b = 0.0;
    for (const auto& c : spec.sources) {
        const double dx = x - c[0];
        const double dy = y - c[1];
        b += spec.power * std::exp(-(dx * dx + dy * dy) * inv);
    }
    return b;
}

HeatSolution heat_fields(const HeatSpec& spec) {
    spec.validate();
    const auto nx = static_cast<Eigen::Index>(spec.nx);
    const auto ny = static_cast<Eigen::Index>(spec.ny);
    const double hx = 1.0 / static_cast<double>(nx - 1);
    const double hy = 1.0 / static_cast<double>(ny - 1);
    const std::size_t total_steps = spec.snapshots * spec.steps_per_snapshot;
    const double dt = spec.final_time / static_cast<double>(total_steps);

    // Interior unknowns, index (i-1)*(ny-2) + (j-1).
    const Eigen::Index ix = nx - 2;
    const Eigen::Index iy = ny - 2;
    const Eigen::Index n = ix * iy;
    auto idx = [iy](Eigen::Index i, Eigen::Index j) { return (i - 1) * iy + (j - 1); };

    const double cx = dt * spec.conductivity / (hx * hx);
    const double cy = dt * spec.conductivity / (hy * hy);
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(5 * n));
    Vector rhs_source(n);
    for (Eigen::Index i = 1; i <= ix; ++i) {
        for (Eigen::Index j = 1; j <= iy; ++j) {
            const Eigen::Index r = idx(i, j);
            triplets.emplace_back(r, r, 1.0 + 2.0 * cx + 2.0 * cy);
            if (i > 1) triplets.emplace_back(r, idx(i - 1, j), -cx);
            if (i < ix) triplets.emplace_back(r, idx(i + 1, j), -cx);
            if (j > 1) triplets.emplace_back(r, idx(i, j - 1), -cy);
            if (j < iy) triplets.emplace_back(r, idx(i, j + 1), -cy);
            rhs_source(r) = dt * heat_source(spec, static_cast<double>(i) * hx, static_cast<double>(j) * hy);
        }
    }
    Eigen::SparseMatrix<double> system(n, n);
    system.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(system);
    if (solver.info() != Eigen::Success) throw SingularSystem("heat: implicit system factorization failed");

    HeatSolution out;
    out.nx = spec.nx;
    out.ny = spec.ny;
    Vector u = Vector::Zero(n);
    Vector rhs(n);
    for (std::size_t step = 1; step <= total_steps; ++step) {
        rhs = u + rhs_source;  // the permuted solve must not alias its right-hand side
        u = solver.solve(rhs);
        if (solver.info() != Eigen::Success) throw SingularSystem("heat: implicit solve failed");
        if (step % spec.steps_per_snapshot != 0) continue;
        Vector field = Vector::Zero(nx * ny);
        for (Eigen::Index i = 1; i <= ix; ++i) {
            for (Eigen::Index j = 1; j <= iy; ++j) field(i * ny + j) = u(idx(i, j));
        }
        out.times.push_back(spec.final_time * static_cast<double>(step / spec.steps_per_snapshot) /
                            static_cast<double>(spec.snapshots));
        out.fields.push_back(std::move(field));
    }
    return out;
}

Matrix heat_grid(const HeatSpec& spec) {
    spec.validate();
    const auto nx = static_cast<Eigen::Index>(spec.nx);
    const auto ny = static_cast<Eigen::Index>(spec.ny);
    const auto nt = static_cast<Eigen::Index>(spec.snapshots);
    Matrix pts(nt * nx * ny, 3);
    Eigen::Index row = 0;
    for (Eigen::Index s = 1; s <= nt; ++s) {
        const double t = spec.final_time * static_cast<double>(s) / static_cast<double>(nt);
        for (Eigen::Index i = 0; i < nx; ++i) {
            for (Eigen::Index j = 0; j < ny; ++j) {
                pts.row(row++) << static_cast<double>(i) / static_cast<double>(nx - 1),
                    static_cast<double>(j) / static_cast<double>(ny - 1), t;
            }
        }
    }
    return pts;
}

Dataset heat_dataset(const HeatSpec& spec, const HeatSolution& solution) {
    const Matrix pts = heat_grid(spec);
    Matrix x(pts.rows(), 5);
    Vector y(pts.rows());
    const auto per_level = static_cast<Eigen::Index>(spec.nx * spec.ny);
    for (Eigen::Index r = 0; r < pts.rows(); ++r) {
        x.row(r) << pts(r, 0), pts(r, 1), pts(r, 2), spec.conductivity, spec.power;
        y(r) = solution.fields.at(static_cast<std::size_t>(r / per_level))(r % per_level);
    }
    return Dataset(std::move(x), std::move(y));
}

Dataset heat_solve(const HeatSpec& spec) { return heat_dataset(spec, heat_fields(spec)); }

nlohmann::ordered_json heat_metadata(const HeatSpec& spec) {
    nlohmann::ordered_json j;
    j["problem"] = "heat";
    j["equation"] = "u_t = k * laplace(u) + b(x, P); u = 0 on boundary; u(x, 0) = 0";
    j["conductivity"] = spec.conductivity;
    j["power"] = spec.power;
    j["source_width"] = spec.source_width;
    nlohmann::ordered_json centers = nlohmann::ordered_json::array();
    for (const auto& c : spec.sources) centers.push_back({c[0], c[1]});
    j["source_centers"] = std::move(centers);
    j["grid"] = {{"nx", spec.nx}, {"ny", spec.ny}, {"snapshots", spec.snapshots}, {"final_time", spec.final_time}};
    j["scheme"] = {{"time", "backward_euler"},
                   {"space", "five_point_laplacian"},
                   {"steps_per_snapshot", spec.steps_per_snapshot},
                   {"dt", spec.final_time / static_cast<double>(spec.snapshots * spec.steps_per_snapshot)}};
    j["columns"] = {"x", "y", "t", "k", "P", "u"};
    return j;
}

}  // namespace binn::problems
