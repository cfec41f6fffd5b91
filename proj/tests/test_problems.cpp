#include <doctest.h>

#include <cmath>
#include <numbers>

#include "binn/problems.hpp"
#include "test_support.hpp"

using namespace binn;
using namespace binn::problems;

TEST_CASE("synthetic 1D function") {
    CHECK(synthetic_1d_function(0.0) == doctest::Approx(0.3));
    CHECK(synthetic_1d_function(std::numbers::pi / 6) == doctest::Approx(1.0));  // sin(pi/2) + 0.3 cos(3pi/2)

    const auto clean = synthetic_1d(100, 5, false);
    CHECK(clean.size() == 100);
    for (Eigen::Index i = 0; i < 100; ++i) {
        CHECK(clean.inputs()(i, 0) >= -1.0);
        CHECK(clean.inputs()(i, 0) <= 1.0);
        CHECK(clean.targets()(i) == synthetic_1d_function(clean.inputs()(i, 0)));
    }
    const auto a = synthetic_1d(5000, 6);
    const auto b = synthetic_1d(5000, 6);
    CHECK(a.targets() == b.targets());
    double var = 0.0;
    for (Eigen::Index i = 0; i < 5000; ++i) {
        const double r = a.targets()(i) - synthetic_1d_function(a.inputs()(i, 0));
        var += r * r;
    }
    CHECK(var / 5000 == doctest::Approx(kSyntheticNoiseVariance).epsilon(0.08));
}

TEST_CASE("Poisson solution") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    SUBCASE("homogeneous boundary and zero parameter") {
        for (int t = 0; t < 50; ++t) {
            std::array<double, 3> x{u(rng), u(rng), u(rng)};
            x[static_cast<std::size_t>(t % 3)] = (t % 2 == 0) ? 0.0 : 1.0;
            CHECK(std::abs(poisson_solution(x, 1.7)) <= 1e-14);
            std::array<double, 3> y{u(rng), u(rng), u(rng)};
            CHECK(poisson_solution(y, 0.0) == 0.0);
        }
    }
    SUBCASE("negative Laplacian equals the forcing") {
        const double h = 1.0 / 256;
        for (int t = 0; t < 40; ++t) {
            const std::array<double, 3> x{0.05 + 0.9 * u(rng), 0.05 + 0.9 * u(rng), 0.05 + 0.9 * u(rng)};
            const double p = 0.5 + u(rng);
            double lap = 0.0;
            for (std::size_t d = 0; d < 3; ++d) {
                auto xp = x, xm = x;
                xp[d] += h;
                xm[d] -= h;
                lap += (poisson_solution(xp, p) - 2 * poisson_solution(x, p) + poisson_solution(xm, p)) / (h * h);
            }
            const double f = poisson_forcing(x, p);
            CHECK(std::abs(-lap - f) <= 1e-3 * std::max(1.0, std::abs(f)));
        }
    }
    SUBCASE("linear in the parameter and separable terms") {
        for (int t = 0; t < 20; ++t) {
            const std::array<double, 3> x{u(rng), u(rng), u(rng)};
            CHECK(poisson_solution(x, 2.0) == doctest::Approx(2.0 * poisson_solution(x, 1.0)).epsilon(1e-13));
            double sum = 0.0;
            for (std::size_t r = 0; r < 3; ++r) sum += poisson_term(x, 1.3, r);
            CHECK(sum == doctest::Approx(poisson_solution(x, 1.3)).epsilon(1e-13));
            const std::array<double, 3> swapped{x[1], x[0], x[2]};
            CHECK(poisson_term(x, 1.0, 2) == doctest::Approx(poisson_term(swapped, 1.0, 2)).epsilon(1e-13));
        }
        // amplitude of term 0: c / (pi^2 * (4 + 9 + 4))
        const std::array<double, 3> peak{0.25, 1.0 / 6, 0.25};
        CHECK(poisson_term(peak, 1.0, 0) ==
              doctest::Approx(1.0 / (std::numbers::pi * std::numbers::pi * 17)).epsilon(1e-12));
    }
    SUBCASE("grids") {
        const Matrix g = poisson_grid(16);
        CHECK(g.rows() == 4096);
        CHECK(g(0, 0) == 0.0);
        CHECK(g(4095, 0) == 1.0);
        CHECK(g(1, 2) == doctest::Approx(1.0 / 15));
        CHECK(g(1, 0) == 0.0);  // x1 varies slowest
        const auto data = poisson_dataset(5, 0.7);
        CHECK(data.dims() == 4);
        CHECK(data.size() == 125);
        CHECK((data.inputs().col(3).array() == 0.7).all());
        const auto many = poisson_datasets(3, {0.1, 0.2});
        CHECK(many.size() == 2);
        CHECK(many.at(0.2).size() == 27);
        CHECK_THROWS_AS((void)poisson_grid(1), InvalidArgument);
    }
}

TEST_CASE("heat solver") {
    HeatSpec spec;
    spec.nx = spec.ny = 21;
    spec.snapshots = 4;

    SUBCASE("zero source gives a zero field") {
        spec.power = 0.0;
        const auto sol = heat_fields(spec);
        for (const auto& f : sol.fields) CHECK(f.isZero(0.0));
    }
    SUBCASE("shape and boundary") {
        const auto sol = heat_fields(spec);
        REQUIRE(sol.fields.size() == 4);
        CHECK(sol.times.back() == doctest::Approx(spec.final_time));
        for (const auto& f : sol.fields) {
            CHECK(f.size() == 441);
            for (std::size_t i = 0; i < 21; ++i) {
                CHECK(f(static_cast<Eigen::Index>(i)) == 0.0);               // x = 0
                CHECK(f(static_cast<Eigen::Index>(20 * 21 + i)) == 0.0);     // x = 1
                CHECK(f(static_cast<Eigen::Index>(i * 21)) == 0.0);          // y = 0
                CHECK(f(static_cast<Eigen::Index>(i * 21 + 20)) == 0.0);     // y = 1
            }
            CHECK(f.minCoeff() >= 0.0);
        }
        // nonnegative source from a zero start: the field grows monotonically in time
        for (std::size_t s = 1; s < sol.fields.size(); ++s) {
            CHECK(((sol.fields[s] - sol.fields[s - 1]).array() >= -1e-12).all());
        }
        // bounded by the pure-source growth t * max b
        double bmax = 0.0;
        for (int i = 0; i <= 100; ++i) {
            for (int j = 0; j <= 100; ++j) bmax = std::max(bmax, heat_source(spec, i / 100.0, j / 100.0));
        }
        CHECK(sol.fields.back().maxCoeff() <= spec.final_time * bmax);
    }
    SUBCASE("symmetric sources give a symmetric field") {
        const Vector f = heat_fields(spec).fields.back();
        double asym = 0.0;
        for (Eigen::Index i = 0; i < 21; ++i) {
            for (Eigen::Index j = 0; j < 21; ++j) {
                asym = std::max(asym, std::abs(f(i * 21 + j) - f(j * 21 + i)));
                asym = std::max(asym, std::abs(f(i * 21 + j) - f((20 - i) * 21 + j)));
            }
        }
        CHECK(asym <= 1e-12 * f.maxCoeff());
    }
    SUBCASE("grid refinement converges") {
        auto diff = [&](std::size_t coarse) {
            auto a = spec, b = spec;
            a.nx = a.ny = coarse;
            b.nx = b.ny = 2 * coarse - 1;
            const Vector fa = heat_fields(a).fields.back();
            const Vector fb = heat_fields(b).fields.back();
            const auto n = static_cast<Eigen::Index>(coarse), m = static_cast<Eigen::Index>(2 * coarse - 1);
            double d = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                for (Eigen::Index j = 0; j < n; ++j) d = std::max(d, std::abs(fa(i * n + j) - fb(2 * i * m + 2 * j)));
            }
            return d;
        };
        CHECK(diff(41) < 0.5 * diff(21));
    }
    SUBCASE("parameter dependence") {
        const auto base = heat_fields(spec);
        auto doubled = spec;
        doubled.power = 200.0;
        const auto scaled = heat_fields(doubled);
        CHECK(test::max_abs(scaled.fields.back() - 2.0 * base.fields.back()) <= 1e-10 * base.fields.back().maxCoeff());
        auto conductive = spec;
        conductive.conductivity = 4.0;
        CHECK(heat_fields(conductive).fields.back().maxCoeff() < base.fields.back().maxCoeff());
    }
    SUBCASE("dataset and metadata") {
        const auto data = heat_solve(spec);
        CHECK(data.dims() == 5);
        CHECK(data.size() == 4 * 441);
        CHECK((data.inputs().col(3).array() == spec.conductivity).all());
        CHECK((data.inputs().col(4).array() == spec.power).all());
        CHECK(heat_grid(spec).rows() == static_cast<Eigen::Index>(data.size()));
        const auto meta = heat_metadata(spec);
        CHECK(meta["source_centers"].size() == 16);
        CHECK(meta["grid"]["nx"] == 21);
    }
    SUBCASE("invalid specs") {
        auto bad = spec;
        bad.conductivity = 0.0;
        CHECK_THROWS_AS((void)heat_fields(bad), InvalidArgument);
        bad = spec;
        bad.power = -1.0;
        CHECK_THROWS_AS((void)heat_fields(bad), InvalidArgument);
        bad = spec;
        bad.nx = 2;
        CHECK_THROWS_AS((void)heat_fields(bad), InvalidArgument);
    }
    CHECK(HeatSpec::default_sources().size() == 16);
    CHECK(heat_source(HeatSpec{}, 0.2, 0.2) >= 100.0);
}
