#include "binn/gp.hpp"

#include <cmath>

#include "binn/blr.hpp"

namespace binn {

namespace {

struct KernelEvaluator {
    const Eigen::Ref<const Vector>& x;
    const Eigen::Ref<const Vector>& xp;

    double operator()(const RbfKernel& k) const {
        const double r2 = (x - xp).squaredNorm();
        return k.signal_variance * std::exp(-r2 / (2.0 * k.length_scale * k.length_scale));
    }

    double operator()(const BinnProductKernel& k) const {
        double value = 1.0;
        for (std::size_t d = 0; d < k.bases.size(); ++d) {
            const auto i = static_cast<Eigen::Index>(d);
            value *= k.prior_variance * eval_basis(k.bases[d], x(i)).dot(eval_basis(k.bases[d], xp(i)));
        }
        return value;
    }
};

std::size_t kernel_dims(const Kernel& k) {
    if (const auto* p = std::get_if<BinnProductKernel>(&k)) return p->bases.size();
    return 0;  // any
}

void validate(const Kernel& k) {
    if (const auto* r = std::get_if<RbfKernel>(&k)) {
        if (!(r->signal_variance > 0.0) || !(r->length_scale > 0.0)) {
            throw InvalidArgument("rbf kernel scales must be > 0");
        }
    } else {
        const auto& p = std::get<BinnProductKernel>(k);
        if (!(p.prior_variance > 0.0)) throw InvalidArgument("product kernel prior variance must be > 0");
        if (p.bases.empty()) throw InvalidArgument("product kernel needs one basis per dimension");
    }
}

// Rows of a mapped through each dimension's basis, for the product kernel.
std::vector<Matrix> feature_blocks(const BinnProductKernel& k, const Matrix& a) {
    std::vector<Matrix> out;
    out.reserve(k.bases.size());
    for (std::size_t d = 0; d < k.bases.size(); ++d) out.push_back(basis_matrix(k.bases[d], a.col(static_cast<Eigen::Index>(d))));
    return out;
}

}  // namespace

double kernel_eval(const Kernel& k, const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& xp) {
    validate(k);
    if (x.size() != xp.size()) throw DimensionMismatch("kernel_eval: input lengths differ");
    if (const auto dims = kernel_dims(k); dims != 0 && static_cast<std::size_t>(x.size()) != dims) {
        throw DimensionMismatch("kernel_eval: input dimension does not match the product kernel");
    }
    return std::visit(KernelEvaluator{x, xp}, k);
}

Matrix kernel_matrix(const Kernel& k, const Matrix& a, const Matrix& b) {
    validate(k);
    if (a.cols() != b.cols()) throw DimensionMismatch("kernel_matrix: input dimensions differ");
    if (const auto* p = std::get_if<BinnProductKernel>(&k)) {
        if (static_cast<std::size_t>(a.cols()) != p->bases.size()) {
            throw DimensionMismatch("kernel_matrix: input dimension does not match the product kernel");
        }
        const auto fa = feature_blocks(*p, a);
        const auto fb = feature_blocks(*p, b);
        Matrix out = Matrix::Ones(a.rows(), b.rows());
        for (std::size_t d = 0; d < fa.size(); ++d) {
            out.array() *= (p->prior_variance * (fa[d] * fb[d].transpose())).array();
        }
        return out;
    }
    const auto& r = std::get<RbfKernel>(k);
    Matrix out(a.rows(), b.rows());
    const double inv = 1.0 / (2.0 * r.length_scale * r.length_scale);
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            out(i, j) = r.signal_variance * std::exp(-(a.row(i) - b.row(j)).squaredNorm() * inv);
        }
    }
    return out;
}

GpPrediction gp_fit_predict(const Kernel& k, const Dataset& train, const Matrix& test_inputs, double noise_variance,
                            bool include_noise, double jitter) {
    validate(k);
    if (!(noise_variance > 0.0)) throw InvalidArgument("gp: noise variance must be > 0");
    if (!test_inputs.allFinite()) throw InvalidArgument("gp: non-finite test input");
    const Eigen::Index n_test = test_inputs.rows();

    GpPrediction out;
    Vector prior_var(n_test);
    for (Eigen::Index i = 0; i < n_test; ++i) prior_var(i) = kernel_eval(k, test_inputs.row(i).transpose(), test_inputs.row(i).transpose());

    if (train.is_empty()) {
        out.means = Vector::Zero(n_test);
        out.variances = prior_var;
        if (include_noise) out.variances.array() += noise_variance;
        return out;
    }
    if (train.dims() != static_cast<std::size_t>(test_inputs.cols())) throw DimensionMismatch("gp: train/test dimension mismatch");

    Matrix gram = kernel_matrix(k, train.inputs(), train.inputs());
    gram.diagonal().array() += noise_variance;
    Eigen::LLT<Matrix> llt;
    try {
        factorize_with_jitter(gram, jitter, llt);
    } catch (const SingularSystem& e) {
        throw SingularSystem(std::string("gp kernel matrix: ") + e.what());
    }

    const Matrix cross = kernel_matrix(k, train.inputs(), test_inputs);  // N x N*
    const Vector alpha = llt.solve(train.targets());
    out.means = cross.transpose() * alpha;
    const Matrix v = llt.matrixL().solve(cross);
    out.variances = (prior_var - v.colwise().squaredNorm().transpose()).cwiseMax(0.0);
    if (include_noise) out.variances.array() += noise_variance;
    return out;
}

}  // namespace binn
