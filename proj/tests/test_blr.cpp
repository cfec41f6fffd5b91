#include <doctest.h>

#include "binn/blr.hpp"
#include "test_support.hpp"

using namespace binn;

TEST_CASE("no data gives the prior") {
    auto prior = GaussianPrior::isotropic(4, 2.5);
    prior.mean << 1, 2, 3, 4;
    auto post = posterior(Matrix(0, 4), Vector(0), prior, 0.1);
    CHECK(test::max_abs(post.mean - prior.mean) < 1e-8);
    CHECK(test::max_abs(post.covariance - 2.5 * Matrix::Identity(4, 4)) < 1e-8);

    // prior predictive: phi^T (sigma_w^2 I) phi
    Vector phi(4);
    phi << 0.5, -1, 0.25, 2;
    auto p = predictive(post, phi, 0.1, false);
    CHECK(p.variance == doctest::Approx(2.5 * phi.squaredNorm()).epsilon(1e-9));
}

TEST_CASE("scalar closed form") {
    // precision = 1/1 * 1 + 1/1 = 2 -> Sigma = 1/2; mean = Sigma * (0 + 2) = 1
    Matrix x(1, 1);
    x << 1.0;
    Vector y(1);
    y << 2.0;
    auto post = posterior(x, y, GaussianPrior::isotropic(1, 1.0), 1.0);
    CHECK(post.covariance(0, 0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(post.mean(0) == doctest::Approx(1.0).epsilon(1e-9));

    Vector one(1);
    one << 1.0;
    auto p = predictive(post, one, 1.0, false);
    CHECK(p.mean == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(p.variance == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(predictive(post, one, 1.0, true).variance == doctest::Approx(1.5).epsilon(1e-9));

    auto zero = predictive(post, Vector::Zero(1), 1.0, true);
    CHECK(zero.mean == 0.0);
    CHECK(zero.variance == 1.0);
    CHECK(predictive(post, Vector::Zero(1), 1.0, false).variance == 0.0);
}

TEST_CASE("broad prior reproduces ordinary least squares") {
    std::mt19937_64 rng(21);
    const Matrix x = test::random_matrix(rng, 50, 5);
    const Vector y = test::random_vector(rng, 50);
    const Vector ols = x.colPivHouseholderQr().solve(y);
    auto post = posterior(x, y, GaussianPrior::isotropic(5, 1e8), 1.0);
    CHECK((post.mean - ols).norm() <= 1e-6 * ols.norm());
}

TEST_CASE("posterior covariance is symmetric positive definite") {
    std::mt19937_64 rng(2);
    const Matrix x = test::random_matrix(rng, 8, 12);  // K > N
    auto post = posterior(x, test::random_vector(rng, 8), GaussianPrior::isotropic(12, 1.0), 0.01);
    CHECK(test::max_abs(post.covariance - post.covariance.transpose()) <= 1e-10);
    Eigen::LLT<Matrix> llt(post.covariance);
    CHECK(llt.info() == Eigen::Success);
}

TEST_CASE("adding a row never increases epistemic variance") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index k = 1 + trial % 6;
        const Eigen::Index n = trial % 9;
        const Matrix x = test::random_matrix(rng, n + 1, k);
        const Vector y = test::random_vector(rng, n + 1);
        const auto prior = GaussianPrior::isotropic(k, 1.5);
        auto before = posterior(x.topRows(n), y.head(n), prior, 0.2);
        auto after = posterior(x, y, prior, 0.2);
        for (int t = 0; t < 5; ++t) {
            const Vector phi = test::random_vector(rng, k);
            CHECK(predictive(after, phi, 0.2, false).variance <= predictive(before, phi, 0.2, false).variance + 1e-10);
        }
    }
}

TEST_CASE("duplicated rows at doubled noise equal single rows") {
    std::mt19937_64 rng(8);
    const Matrix x = test::random_matrix(rng, 10, 4);
    const Vector y = test::random_vector(rng, 10);
    Matrix xx(20, 4);
    xx << x, x;
    Vector yy(20);
    yy << y, y;
    auto prior = GaussianPrior::isotropic(4, 0.7);
    prior.mean = test::random_vector(rng, 4);
    auto single = posterior(x, y, prior, 0.3);
    auto doubled = posterior(xx, yy, prior, 0.6);
    CHECK(test::max_abs(single.mean - doubled.mean) <= 1e-8);
    CHECK(test::max_abs(single.covariance - doubled.covariance) <= 1e-8);
}

TEST_CASE("jitter escalation and singular systems") {
    Eigen::LLT<Matrix> llt;
    Matrix psd = Matrix::Zero(3, 3);  // singular, rescued by jitter
    psd(0, 0) = 1.0;
    const double used = factorize_with_jitter(psd, 1e-10, llt);
    CHECK(used >= 1e-10);
    CHECK(used <= kMaxJitter);

    Matrix neg = -Matrix::Identity(2, 2);
    CHECK_THROWS_AS(factorize_with_jitter(neg, 1e-10, llt), SingularSystem);

    CHECK_THROWS_AS((void)posterior(Matrix::Zero(2, 2), Vector::Zero(3), GaussianPrior::isotropic(2, 1), 1),
                    DimensionMismatch);
    CHECK_THROWS_AS((void)posterior(Matrix::Zero(2, 2), Vector::Zero(2), GaussianPrior::isotropic(2, 1), 0.0),
                    InvalidArgument);
}
