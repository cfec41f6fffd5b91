#include "binn/blr.hpp"

#include <cmath>
#include <sstream>

namespace binn {

GaussianPrior GaussianPrior::isotropic(Eigen::Index k, double variance) {
    return GaussianPrior{Vector::Zero(k), variance};
}

double factorize_with_jitter(const Matrix& a, double initial_jitter, Eigen::LLT<Matrix>& llt) {
    double jitter = initial_jitter;
    const Matrix identity = Matrix::Identity(a.rows(), a.cols());
    while (true) {
        llt.compute(a + jitter * identity);
        if (llt.info() == Eigen::Success) {
            // LLT only checks the sign of pivots; reject numerically meaningless ones too.
            const auto diag = llt.matrixLLT().diagonal();
            if (diag.size() == 0 || (diag.minCoeff() > 0.0 && diag.allFinite())) return jitter;
        }
        const double next = jitter == 0.0 ? 1e-10 : jitter * 10.0;
        if (next > kMaxJitter * (1.0 + 1e-12)) break;
        jitter = next;
    }
    std::ostringstream msg;
    msg << "symmetric positive-definite factorization failed (size " << a.rows() << ", jitter up to " << jitter << ")";
    throw SingularSystem(msg.str());
}

BlrPosterior posterior_from_normal_equations(const Matrix& gram, const Vector& moment, const GaussianPrior& prior,
                                             double noise_variance, double jitter) {
    const Eigen::Index k = gram.rows();
    if (gram.cols() != k || moment.size() != k || prior.mean.size() != k) {
        throw DimensionMismatch("posterior: inconsistent normal-equation sizes");
    }
    if (!(noise_variance > 0.0)) throw InvalidArgument("posterior: noise variance must be > 0");
    if (!(prior.variance > 0.0)) throw InvalidArgument("posterior: prior variance must be > 0");

    const double inv_noise = 1.0 / noise_variance;
    const double inv_prior = 1.0 / prior.variance;
    Matrix precision = inv_noise * gram;
    precision.diagonal().array() += inv_prior;

    Eigen::LLT<Matrix> llt;
    factorize_with_jitter(precision, jitter, llt);

    BlrPosterior post;
    post.mean = llt.solve(inv_prior * prior.mean + inv_noise * moment);
    post.covariance = llt.solve(Matrix::Identity(k, k));
    post.covariance = 0.5 * (post.covariance + post.covariance.transpose()).eval();
    return post;
}

BlrPosterior posterior(const Matrix& x, const Vector& y, const GaussianPrior& prior, double noise_variance,
                       double jitter) {
    if (x.rows() != y.size()) throw DimensionMismatch("posterior: X and y row counts differ");
    Matrix gram = Matrix::Zero(x.cols(), x.cols());
    gram.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
    gram = gram.selfadjointView<Eigen::Lower>();
    const Vector moment = x.transpose() * y;
    return posterior_from_normal_equations(gram, moment, prior, noise_variance, jitter);
}

Predictive predictive(const BlrPosterior& post, const Eigen::Ref<const Vector>& phi, double noise_variance,
                      bool include_noise) {
    if (phi.size() != post.mean.size()) throw DimensionMismatch("predictive: feature length mismatch");
    Predictive p;
    p.mean = phi.dot(post.mean);
    p.variance = std::max(0.0, phi.dot(post.covariance * phi));
    if (include_noise) p.variance += noise_variance;
    return p;
}

}  // namespace binn
