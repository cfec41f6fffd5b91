#include "binn/model.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "binn/kernels.hpp"

namespace binn {

Eigen::Map<const Matrix> BinnModel::mode_means(std::size_t d) const {
    const auto& mean = posteriors.at(d).mean;
    return {mean.data(), static_cast<Eigen::Index>(basis_count(d)), static_cast<Eigen::Index>(modes())};
}

Matrix BinnModel::mode_covariance(std::size_t d, std::size_t m) const {
    const auto j = static_cast<Eigen::Index>(basis_count(d));
    const auto off = static_cast<Eigen::Index>(m) * j;
    return posteriors.at(d).covariance.block(off, off, j, j);
}

namespace {

// Basis matrices and current per-mode factor values f_d^(m)(x_id) for one dataset.
struct TrainingCache {
    std::vector<Matrix> phi;      // N x J_d
    std::vector<Matrix> factors;  // N x M
};

TrainingCache build_cache(const BinnModel& model, const Dataset& data) {
    if (data.dims() != model.dims()) {
        throw DimensionMismatch("model has " + std::to_string(model.dims()) + " inputs, data has " +
                                std::to_string(data.dims()));
    }
    const Matrix scaled = model.scaler.transform(data.inputs());
    TrainingCache cache;
    for (std::size_t d = 0; d < model.dims(); ++d) {
        cache.phi.push_back(basis_matrix(model.bases[d], scaled.col(static_cast<Eigen::Index>(d))));
        cache.factors.push_back(cache.phi.back() * model.mode_means(d));
    }
    return cache;
}

void update_dimension(BinnModel& model, TrainingCache& cache, const Vector& targets, std::size_t d) {
    const Matrix g = kernels::frozen_products(cache.factors, d);
    const auto ne = kernels::normal_equations(g, cache.phi[d], targets);
    auto& post = model.posteriors[d];
    const GaussianPrior prior{model.config.proximal_updates ? post.mean : post.prior_mean,
                              model.config.prior_variance};
    try {
        auto updated = posterior_from_normal_equations(ne.gram, ne.moment, prior, model.config.noise_variance,
                                                       model.config.jitter);
        post.mean = std::move(updated.mean);
        post.covariance = std::move(updated.covariance);
    } catch (const SingularSystem& e) {
        throw SingularSystem("block update of dimension " + std::to_string(d) + ": " + e.what());
    }
    cache.factors[d] = cache.phi[d] * model.mode_means(d);
}

double cache_rmse(const TrainingCache& cache, const Vector& targets) {
    if (targets.size() == 0) return 0.0;
    const Vector pred = kernels::frozen_products(cache.factors, cache.factors.size()).rowwise().sum();
    return rmse(pred, targets);
}

std::vector<BasisSpec> place_bases(const ModelConfig& config, const Scaler& scaler, const Dataset& data) {
    std::vector<BasisSpec> bases;
    const Matrix scaled = scaler.transform(data.inputs());
    for (std::size_t d = 0; d < data.dims(); ++d) {
        std::vector<double> centers;
        if (config.center_placement == CenterPlacement::Equispaced) {
            centers = equispaced_centers(config.basis_counts[d], 0.0, 1.0);
        } else {
            centers = unique_centers(scaled.col(static_cast<Eigen::Index>(d)));
        }
        bases.emplace_back(std::move(centers), config.length_scales[d]);
    }
    return bases;
}

void check_warm_start(const BinnModel& warm, const ModelConfig& config, std::size_t dims) {
    if (warm.dims() != dims) throw DimensionMismatch("warm-start model dimension differs from the data");
    if (warm.modes() != config.modes) throw InvalidArgument("warm-start model has a different number of modes");
    for (std::size_t d = 0; d < dims; ++d) {
        if (warm.posteriors.at(d).mean.size() != static_cast<Eigen::Index>(warm.basis_count(d) * warm.modes())) {
            throw InvalidArgument("warm-start model is malformed");
        }
    }
}

}  // namespace

double initial_mean_std(double prior_variance, std::size_t modes, std::size_t dims) {
    return std::sqrt(prior_variance) * std::pow(static_cast<double>(modes), -1.0 / (2.0 * static_cast<double>(dims)));
}

BinnModel init_model(const ModelConfig& config, const Dataset& data, const FitOptions& options) {
    if (data.is_empty()) throw InvalidArgument("init_model: dataset is empty");
    BinnModel model;
    model.config = config.resolved_for(data.dims());
    const std::size_t dims = data.dims();
    const std::size_t modes = model.config.modes;

    if (options.warm_start) {
        const auto& warm = *options.warm_start;
        check_warm_start(warm, model.config, dims);
        model.scaler = options.scaler ? *options.scaler : warm.scaler;
        model.bases = warm.bases;
        for (std::size_t d = 0; d < dims; ++d) {
            model.config.basis_counts[d] = warm.basis_count(d);
            model.config.length_scales[d] = warm.bases[d].length_scale;
            const auto k = warm.posteriors[d].mean.size();
            model.posteriors.push_back({warm.posteriors[d].mean, warm.posteriors[d].mean,
                                        model.config.prior_variance * Matrix::Identity(k, k)});
        }
        return model;
    }

    model.scaler = options.scaler ? *options.scaler : fit_scaler(data);
    if (model.scaler.dims() != dims) throw DimensionMismatch("scaler dimension differs from the data");
    model.bases = place_bases(model.config, model.scaler, data);
    for (std::size_t d = 0; d < dims; ++d) model.config.basis_counts[d] = model.bases[d].size();

    const double init_sd = initial_mean_std(model.config.prior_variance, modes, dims);
    std::mt19937_64 rng(derive_seed(model.config.seed, "init"));
    std::normal_distribution<double> normal(0.0, init_sd);
    for (std::size_t d = 0; d < dims; ++d) {
        const auto k = static_cast<Eigen::Index>(model.bases[d].size() * modes);
        DimensionPosterior post;
        post.prior_mean = Vector::Zero(k);
        post.mean.resize(k);
        for (Eigen::Index i = 0; i < k; ++i) post.mean(i) = normal(rng);
        post.covariance = model.config.prior_variance * Matrix::Identity(k, k);
        model.posteriors.push_back(std::move(post));
    }
    return model;
}

FrozenFactors frozen_factors(const BinnModel& model, const Dataset& data, std::size_t d) {
    if (d >= model.dims()) throw InvalidArgument("frozen_factors: dimension index out of range");
    const auto cache = build_cache(model, data);
    return {kernels::frozen_products(cache.factors, d)};
}

Matrix block_design_matrix(const FrozenFactors& g, const Matrix& phi) {
    return kernels::kronecker_rows(g.values, phi);
}

void sweep(BinnModel& model, const Dataset& data) {
    auto cache = build_cache(model, data);
    for (std::size_t d = 0; d < model.dims(); ++d) update_dimension(model, cache, data.targets(), d);
}

BinnModel fit(const ModelConfig& config, const Dataset& data, const FitOptions& options, FitTrace* trace) {
    BinnModel model = init_model(config, data, options);
    auto cache = build_cache(model, data);
    const auto patience = model.config.early_stop_patience;

    double best = std::numeric_limits<double>::infinity();
    std::size_t stale = 0;
    FitTrace local;
    for (std::size_t s = 0; s < model.config.sweeps; ++s) {
        for (std::size_t d = 0; d < model.dims(); ++d) update_dimension(model, cache, data.targets(), d);
        ++local.sweeps_run;
        if (!patience && !trace) continue;
        const double r = cache_rmse(cache, data.targets());
        local.train_rmse.push_back(r);
        if (!patience) continue;
        if (r < best - 1e-12) {
            best = r;
            stale = 0;
        } else if (++stale >= *patience) {
            local.stopped_early = true;
            break;
        }
    }
    if (trace) *trace = std::move(local);
    return model;
}

double training_rmse(const BinnModel& model, const Dataset& data) {
    return cache_rmse(build_cache(model, data), data.targets());
}

// Prediction -----------------------------------------------------------------

namespace {

void check_point(const BinnModel& model, const Eigen::Ref<const Vector>& x) {
    if (static_cast<std::size_t>(x.size()) != model.dims()) {
        throw DimensionMismatch("model has " + std::to_string(model.dims()) + " inputs, point has " +
                                std::to_string(x.size()));
    }
    if (!x.allFinite()) throw InvalidArgument("prediction input is not finite");
}

// Per-(d, m) factor moments at one point.
struct FactorMoments {
    Matrix mean;      // D x M
    Matrix variance;  // D x M
};

FactorMoments factor_moments(const BinnModel& model, const Eigen::Ref<const Vector>& x, bool with_variance) {
    const auto dims = static_cast<Eigen::Index>(model.dims());
    const auto modes = static_cast<Eigen::Index>(model.modes());
    FactorMoments out{Matrix(dims, modes), Matrix::Zero(dims, modes)};
    for (Eigen::Index d = 0; d < dims; ++d) {
        const auto du = static_cast<std::size_t>(d);
        const Vector phi = eval_basis(model.bases[du], model.scaler.transform(du, x(d)));
        const auto means = model.mode_means(du);
        out.mean.row(d) = phi.transpose() * means;
        if (!with_variance) continue;
        const auto j = phi.size();
        const auto& cov = model.posteriors[du].covariance;
        for (Eigen::Index m = 0; m < modes; ++m) {
            const auto block = cov.block(m * j, m * j, j, j);
            out.variance(d, m) = std::max(0.0, phi.dot(block * phi));
        }
    }
    return out;
}

}  // namespace

double predict_mean(const BinnModel& model, const Eigen::Ref<const Vector>& x) {
    check_point(model, x);
    const auto fm = factor_moments(model, x, false);
    return fm.mean.colwise().prod().sum();
}

double predict_variance(const BinnModel& model, const Eigen::Ref<const Vector>& x, bool include_noise) {
    check_point(model, x);
    const auto fm = factor_moments(model, x, true);
    double total = 0.0;
    for (Eigen::Index m = 0; m < fm.mean.cols(); ++m) {
        // prod(e^2 + v) - prod(e^2), accumulated as delta_k = e_k^2 delta_{k-1} + v_k P_{k-1}
        // so no cancellation occurs and the result stays nonnegative.
        double full = 1.0;
        double delta = 0.0;
        for (Eigen::Index d = 0; d < fm.mean.rows(); ++d) {
            const double e2 = fm.mean(d, m) * fm.mean(d, m);
            const double v = fm.variance(d, m);
            delta = e2 * delta + v * full;
            full *= e2 + v;
        }
        total += delta;
    }
    if (include_noise) total += model.config.noise_variance;
    return total;
}

BatchPrediction predict_batch_serial(const BinnModel& model, const Matrix& x, bool include_noise) {
    BatchPrediction out{Vector(x.rows()), Vector(x.rows())};
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const Vector row = x.row(i).transpose();
        out.means(i) = predict_mean(model, row);
        out.variances(i) = predict_variance(model, row, include_noise);
    }
    return out;
}

BatchPrediction predict_batch(const BinnModel& model, const Matrix& x, bool include_noise) {
    if (static_cast<std::size_t>(x.cols()) != model.dims() && x.rows() > 0) {
        throw DimensionMismatch("model has " + std::to_string(model.dims()) + " inputs, data has " +
                                std::to_string(x.cols()));
    }
    if (!x.allFinite()) throw InvalidArgument("prediction input is not finite");
    BatchPrediction out{Vector(x.rows()), Vector(x.rows())};
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const Vector row = x.row(i).transpose();
        out.means(i) = predict_mean(model, row);
        out.variances(i) = predict_variance(model, row, include_noise);
    }
    return out;
}

std::vector<double> sample_predictions(const BinnModel& model, const Eigen::Ref<const Vector>& x, std::size_t count,
                                       std::uint64_t seed) {
    check_point(model, x);
    if (count < 1) throw InvalidArgument("sample_predictions: count must be >= 1");
    const std::size_t dims = model.dims();
    const std::size_t modes = model.modes();

    // f_dm = phi_d^T w_dm with w_dm = mean + P^T L sqrt(D) z, so f_dm = e_dm + a_dm^T z.
    std::vector<double> e(dims * modes);
    std::vector<Vector> a(dims * modes);
    for (std::size_t d = 0; d < dims; ++d) {
        const Vector phi = eval_basis(model.bases[d], model.scaler.transform(d, x(static_cast<Eigen::Index>(d))));
        const auto means = model.mode_means(d);
        for (std::size_t m = 0; m < modes; ++m) {
            const Matrix block = model.mode_covariance(d, m);
            Eigen::LDLT<Matrix> ldlt(block);
            const Vector diag = ldlt.vectorD();
            const double scale = std::max(1.0, block.diagonal().cwiseAbs().maxCoeff());
            if (ldlt.info() != Eigen::Success || diag.minCoeff() < -1e-10 * scale) {
                throw SingularSystem("covariance block (dimension " + std::to_string(d) + ", mode " +
                                     std::to_string(m) + ") is not positive semidefinite");
            }
            // Factor S = P^T L D^{1/2}; a = S^T phi.
            Vector t = ldlt.transpositionsP() * phi;
            t = ldlt.matrixU() * t;  // L^T (P phi)
            t.array() *= diag.cwiseMax(0.0).cwiseSqrt().array();
            e[d * modes + m] = phi.dot(means.col(static_cast<Eigen::Index>(m)));
            a[d * modes + m] = std::move(t);
        }
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> out(count);
    for (std::size_t s = 0; s < count; ++s) {
        double y = 0.0;
        for (std::size_t m = 0; m < modes; ++m) {
            double prod = 1.0;
            for (std::size_t d = 0; d < dims; ++d) {
                const auto& av = a[d * modes + m];
                double f = e[d * modes + m];
                for (Eigen::Index k = 0; k < av.size(); ++k) f += av(k) * normal(rng);
                prod *= f;
            }
            y += prod;
        }
        out[s] = y;
    }
    return out;
}

}  // namespace binn
