#include <doctest.h>

#include <cmath>

#include "binn/basis.hpp"
#include "test_support.hpp"

using namespace binn;

TEST_CASE("eval_basis analytic values") {
    BasisSpec spec({-1.0, 0.0, 1.0}, 1.0);
    auto phi = eval_basis(spec, 0.0);
    CHECK(phi(0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    CHECK(phi(1) == 1.0);
    CHECK(phi(2) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));

    BasisSpec narrow({0.3}, 0.2);
    CHECK(eval_basis(narrow, 0.3)(0) == 1.0);
    CHECK(eval_basis(narrow, 0.5)(0) == doctest::Approx(0.606531).epsilon(1e-6));
    CHECK_THROWS_AS((void)eval_basis(narrow, std::nan("")), InvalidArgument);
    CHECK_THROWS_AS(BasisSpec({0.0}, 0.0), InvalidArgument);
}

TEST_CASE("eval_basis is translation invariant and bounded") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const Vector c = test::random_vector(rng, 6);
        const double x = test::random_vector(rng, 1)(0);
        const double shift = test::random_vector(rng, 1, -10, 10)(0);
        BasisSpec a({c.data(), c.data() + c.size()}, 0.3);
        Vector cs = c.array() + shift;
        BasisSpec b({cs.data(), cs.data() + cs.size()}, 0.3);
        const Vector pa = eval_basis(a, x);
        const Vector pb = eval_basis(b, x + shift);
        CHECK(test::max_abs(pa - pb) < 1e-12);
        CHECK(pa.maxCoeff() <= 1.0);
        CHECK(pa.minCoeff() >= 0.0);
    }
}

TEST_CASE("basis_matrix rows match eval_basis") {
    BasisSpec one({0.25}, 0.1);
    Vector x1(1);
    x1 << 0.25;
    auto m1 = basis_matrix(one, x1);
    CHECK(m1.rows() == 1);
    CHECK(m1(0, 0) == 1.0);

    Vector twice(2);
    twice << 0.4, 0.4;
    BasisSpec spec(equispaced_centers(5, 0.0, 1.0), 0.2);
    auto m2 = basis_matrix(spec, twice);
    CHECK(m2.row(0) == m2.row(1));

    std::mt19937_64 rng(9);
    const Vector xs = test::random_vector(rng, 5, 0, 1);
    auto m = basis_matrix(spec, xs);
    for (Eigen::Index i = 0; i < xs.size(); ++i) CHECK(m.row(i).transpose() == eval_basis(spec, xs(i)));

    // centers at the evaluation points: unit diagonal
    BasisSpec at({xs.data(), xs.data() + xs.size()}, 0.2);
    auto sq = basis_matrix(at, xs);
    for (Eigen::Index i = 0; i < xs.size(); ++i) CHECK(sq(i, i) == 1.0);
}

TEST_CASE("equispaced centers") {
    CHECK(equispaced_centers(2, 0, 1) == std::vector<double>{0.0, 1.0});
    CHECK(equispaced_centers(3, 0, 1) == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(equispaced_centers(1, 0, 1) == std::vector<double>{0.5});
    CHECK_THROWS_AS((void)equispaced_centers(0, 0, 1), InvalidArgument);
    CHECK_THROWS_AS((void)equispaced_centers(3, 1, 1), InvalidArgument);
    auto c = equispaced_centers(20, 0, 1);
    for (std::size_t j = 1; j < c.size(); ++j) CHECK(c[j] > c[j - 1]);
}

TEST_CASE("unique_centers deduplicates within tolerance") {
    Vector x(5);
    x << 0.5, 0.1, 0.5 + 1e-14, 0.9, 0.1;
    auto c = unique_centers(x);
    CHECK(c.size() == 3);
    CHECK(c.front() == 0.1);
}
