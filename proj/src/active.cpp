#include "binn/active.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <random>

#include "binn/basis.hpp"

namespace binn::active {

PoissonSource::PoissonSource(std::size_t grid) : grid_(grid), points_(problems::poisson_grid(grid)) {}

Dataset PoissonSource::label(const Vector& theta) const {
    if (theta.size() != 1) throw DimensionMismatch("poisson parameter is a scalar");
    return problems::poisson_dataset(grid_, theta(0));
}

HeatSource::HeatSource(problems::HeatSpec base) : base_(std::move(base)), points_(problems::heat_grid(base_)) {}

Dataset HeatSource::label(const Vector& theta) const {
    if (theta.size() != 2) throw DimensionMismatch("heat parameter is (k, P)");
    auto spec = base_;
    spec.conductivity = theta(0);
    spec.power = theta(1);
    return problems::heat_solve(spec);
}

namespace {

Vector concat_point(const Eigen::Ref<const Vector>& x, const Vector& theta) {
    Vector out(x.size() + theta.size());
    out << x, theta;
    return out;
}

Dataset label_all(const LabelSource& source, const std::vector<Vector>& thetas, std::size_t dims) {
    Dataset out = Dataset::empty(dims);
    for (const auto& t : thetas) out = out.concat(source.label(t));
    return out;
}

// Scaler over the full candidate domain: spatial point bounds plus pool bounds.
Scaler domain_scaler(const Matrix& spatial, const std::vector<Vector>& pool) {
    std::vector<double> lo;
    std::vector<double> hi;
    for (Eigen::Index d = 0; d < spatial.cols(); ++d) {
        lo.push_back(spatial.col(d).minCoeff());
        hi.push_back(spatial.col(d).maxCoeff());
    }
    for (Eigen::Index k = 0; k < pool.front().size(); ++k) {
        double a = pool.front()(k);
        double b = a;
        for (const auto& t : pool) {
            a = std::min(a, t(k));
            b = std::max(b, t(k));
        }
        lo.push_back(a);
        hi.push_back(b);
    }
    return Scaler(std::move(lo), std::move(hi));
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

double score_candidate(const BinnModel& model, const Vector& theta, const Matrix& acquisition_points) {
    if (acquisition_points.rows() == 0) throw InvalidArgument("score_candidate: empty acquisition set");
    const auto spatial_dims = acquisition_points.cols();
    if (static_cast<std::size_t>(spatial_dims + theta.size()) != model.dims()) {
        throw DimensionMismatch("score_candidate: spatial + parameter dimensions do not match the model");
    }
    Vector t = theta;
    const auto& lo = model.scaler.lo();
    const auto& hi = model.scaler.hi();
    bool clamped = false;
    for (Eigen::Index k = 0; k < t.size(); ++k) {
        const auto d = static_cast<std::size_t>(spatial_dims + k);
        const double c = std::clamp(t(k), lo[d], hi[d]);
        clamped = clamped || c != t(k);
        t(k) = c;
    }
    if (clamped) std::cerr << "warning: candidate parameter outside the model's input bounds was clamped\n";

    double sum = 0.0;
    for (Eigen::Index i = 0; i < acquisition_points.rows(); ++i) {
        const Vector x = concat_point(acquisition_points.row(i).transpose(), t);
        sum += std::sqrt(predict_variance(model, x, false));
    }
    return sum / static_cast<double>(acquisition_points.rows());
}

std::vector<double> score_pool_serial(const BinnModel& model, const std::vector<Vector>& pool,
                                      const Matrix& acquisition_points) {
    std::vector<double> scores(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) scores[i] = score_candidate(model, pool[i], acquisition_points);
    return scores;
}

std::vector<double> score_pool(const BinnModel& model, const std::vector<Vector>& pool,
                               const Matrix& acquisition_points) {
    std::vector<double> scores(pool.size());
    const auto n = static_cast<std::ptrdiff_t>(pool.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        scores[static_cast<std::size_t>(i)] = score_candidate(model, pool[static_cast<std::size_t>(i)], acquisition_points);
    }
    return scores;
}

std::size_t argmax_first(const std::vector<double>& scores) {
    if (scores.empty()) throw InvalidArgument("argmax of an empty score list");
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
        if (scores[i] > scores[best]) best = i;
    }
    return best;
}

Selection select_next(const BinnModel& model, const std::vector<Vector>& pool, const Matrix& acquisition_points) {
    if (pool.empty()) throw InvalidArgument("select_next: candidate pool is empty");
    const auto scores = score_pool(model, pool, acquisition_points);
    const auto best = argmax_first(scores);
    return {best, pool[best], scores[best]};
}

CampaignResult run_campaign(const LabelSource& source, const ModelConfig& config, const CampaignConfig& al,
                            const RoundCallback& on_round) {
    if (al.init_size < 1 || al.validation_size < 1) throw InvalidArgument("campaign: init and validation sizes must be >= 1");
    if (al.pool.size() < al.init_size + al.validation_size) {
        throw InvalidArgument("campaign: pool of " + std::to_string(al.pool.size()) + " cannot supply " +
                              std::to_string(al.init_size) + " initial and " + std::to_string(al.validation_size) +
                              " validation parameters");
    }
    for (const auto& t : al.pool) {
        if (static_cast<std::size_t>(t.size()) != source.parameter_dims()) {
            throw DimensionMismatch("campaign: pool parameter has the wrong dimension");
        }
    }
    const Matrix& spatial = source.spatial_points();
    const std::size_t dims = static_cast<std::size_t>(spatial.cols()) + source.parameter_dims();

    AcquisitionState state;
    state.acquisition_points = al.acquisition_points.rows() > 0 ? al.acquisition_points : spatial;
    if (static_cast<std::size_t>(state.acquisition_points.cols() + static_cast<Eigen::Index>(source.parameter_dims())) != dims) {
        throw DimensionMismatch("campaign: acquisition points have the wrong dimension");
    }

    // L_0 then V, uniformly without replacement.
    std::vector<std::size_t> order(al.pool.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(derive_seed(al.seed, "al-sampling"));
    for (std::size_t i = 0; i < al.init_size + al.validation_size; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, order.size() - 1);
        std::swap(order[i], order[pick(rng)]);
    }
    std::vector<bool> taken(al.pool.size(), false);
    for (std::size_t i = 0; i < al.init_size; ++i) {
        state.labeled_parameters.push_back(al.pool[order[i]]);
        taken[order[i]] = true;
    }
    for (std::size_t i = al.init_size; i < al.init_size + al.validation_size; ++i) {
        state.validation_parameters.push_back(al.pool[order[i]]);
        taken[order[i]] = true;
    }
    for (std::size_t i = 0; i < al.pool.size(); ++i) {
        if (!taken[i]) state.pool.push_back(al.pool[i]);
    }

    state.labeled = label_all(source, state.labeled_parameters, dims);
    state.validation = label_all(source, state.validation_parameters, dims);
    const Scaler scaler = domain_scaler(spatial, al.pool);

    CampaignResult result;
    auto validation_rmse = [&](const BinnModel& m) {
        return rmse(predict_batch(m, state.validation.inputs(), false).means, state.validation.targets());
    };

    auto start = std::chrono::steady_clock::now();
    FitOptions options;
    options.scaler = scaler;
    result.models.push_back(fit(config, state.labeled, options));
    RoundRecord record;
    record.round = 0;
    record.pool_size = state.pool.size();
    record.train_size = state.labeled.size();
    record.fit_seconds = seconds_since(start);
    record.validation_rmse = validation_rmse(result.models.back());
    state.rmse_history.push_back(record.validation_rmse);
    result.log.push_back(record);
    if (on_round) on_round(record);

    for (std::size_t t = 1; t <= al.rounds; ++t) {
        if (state.pool.empty()) break;
        const auto& previous = result.models.back();
        const auto selection = select_next(previous, state.pool, state.acquisition_points);
        state.pool.erase(state.pool.begin() + static_cast<std::ptrdiff_t>(selection.index));
        state.labeled_parameters.push_back(selection.theta);
        state.labeled = state.labeled.concat(source.label(selection.theta));

        start = std::chrono::steady_clock::now();
        FitOptions warm;
        warm.scaler = scaler;
        warm.warm_start = &previous;
        BinnModel next;
        try {
            next = fit(config, state.labeled, warm);
        } catch (const Error& e) {
            throw Error("active-learning round " + std::to_string(t) + ": " + e.what());
        }
        RoundRecord rec;
        rec.round = t;
        rec.selected_parameter = selection.theta;
        rec.score = selection.score;
        rec.pool_size = state.pool.size();
        rec.train_size = state.labeled.size();
        rec.fit_seconds = seconds_since(start);
        rec.validation_rmse = validation_rmse(next);
        result.models.push_back(std::move(next));
        state.round = t;
        state.rmse_history.push_back(rec.validation_rmse);
        result.log.push_back(rec);
        if (on_round) on_round(rec);
    }
    result.rmse_history = state.rmse_history;
    result.final_state = std::move(state);
    return result;
}

std::vector<Vector> linspace_pool(double lo, double hi, std::size_t count) {
    std::vector<Vector> out;
    for (double v : equispaced_centers(count, lo, hi)) out.push_back(Vector::Constant(1, v));
    return out;
}

std::vector<Vector> grid_pool_2d(double a_lo, double a_hi, std::size_t a_count, double b_lo, double b_hi,
                                 std::size_t b_count) {
    std::vector<Vector> out;
    for (double a : equispaced_centers(a_count, a_lo, a_hi)) {
        for (double b : equispaced_centers(b_count, b_lo, b_hi)) {
            Vector v(2);
            v << a, b;
            out.push_back(std::move(v));
        }
    }
    return out;
}

ModelConfig poisson_al_config() {
    ModelConfig c;
    c.modes = 10;
    c.basis_counts = {8, 8, 8, 4};
    c.length_scales = {0.1, 0.1, 0.1, 0.5};
    c.noise_variance = 1e-6;
    c.sweeps = 20;
    return c;
}

ModelConfig heat_al_config() {
    ModelConfig c;
    c.modes = 15;
    c.basis_counts = {16, 16, 8, 6, 6};
    c.length_scales = {0.06, 0.06, 0.2, 0.4, 0.4};
    c.noise_variance = 1e-4;
    c.sweeps = 20;
    return c;
}

double pct_improvement(double init_rmse, double final_rmse) {
    if (!(init_rmse > 0.0)) throw InvalidArgument("pct_improvement: initial RMSE must be > 0");
    return 100.0 * (init_rmse - final_rmse) / init_rmse;
}

CampaignSummary summarize(const std::vector<double>& rmse_history) {
    if (rmse_history.empty()) throw InvalidArgument("summarize: empty RMSE history");
    CampaignSummary s;
    s.init_rmse = rmse_history.front();
    s.final_rmse = rmse_history.back();
    s.best_round = static_cast<std::size_t>(std::min_element(rmse_history.begin(), rmse_history.end()) - rmse_history.begin());
    s.best_rmse = rmse_history[s.best_round];
    s.pct_improvement = s.init_rmse > 0.0 ? pct_improvement(s.init_rmse, s.final_rmse) : 0.0;
    return s;
}

}  // namespace binn::active
