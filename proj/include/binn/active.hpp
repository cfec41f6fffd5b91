#pragma once

// Uncertainty-driven active learning over a pool of PDE parameters: each round
// scores every remaining candidate by its mean epistemic predictive standard
// deviation over a fixed set of spatial points, labels the argmax (the full
// spatial field for that parameter), and refits with a warm start.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "binn/core.hpp"
#include "binn/model.hpp"
#include "binn/problems.hpp"

namespace binn::active {

/// Produces labeled full-field data for a parameter vector.
class LabelSource {
public:
    virtual ~LabelSource() = default;

    /// Spatial (or spatio-temporal) sample points, one per row.
    [[nodiscard]] virtual const Matrix& spatial_points() const = 0;
    [[nodiscard]] virtual std::size_t parameter_dims() const = 0;
    /// Rows (spatial point, theta) -> target for every spatial point.
    [[nodiscard]] virtual Dataset label(const Vector& theta) const = 0;
    [[nodiscard]] virtual std::string name() const = 0;
};

class PoissonSource final : public LabelSource {
public:
    explicit PoissonSource(std::size_t grid);
    [[nodiscard]] const Matrix& spatial_points() const override { return points_; }
    [[nodiscard]] std::size_t parameter_dims() const override { return 1; }
    [[nodiscard]] Dataset label(const Vector& theta) const override;
    [[nodiscard]] std::string name() const override { return "poisson"; }

private:
    std::size_t grid_;
    Matrix points_;
};

/// theta = (k, P); every other field of the template spec is held fixed.
class HeatSource final : public LabelSource {
public:
    explicit HeatSource(problems::HeatSpec base);
    [[nodiscard]] const Matrix& spatial_points() const override { return points_; }
    [[nodiscard]] std::size_t parameter_dims() const override { return 2; }
    [[nodiscard]] Dataset label(const Vector& theta) const override;
    [[nodiscard]] std::string name() const override { return "heat"; }

private:
    problems::HeatSpec base_;
    Matrix points_;
};

/// Bookkeeping of a campaign in progress.
struct AcquisitionState {
    std::vector<Vector> pool;
    std::vector<Vector> labeled_parameters;
    std::vector<Vector> validation_parameters;
    Dataset labeled;
    Dataset validation;
    Matrix acquisition_points;
    std::size_t round = 0;
    std::vector<double> rmse_history;
};

/// Mean over acquisition points of the epistemic predictive std at (x, theta).
/// theta is clamped into the model's scaler bounds when it falls outside them.
[[nodiscard]] double score_candidate(const BinnModel& model, const Vector& theta, const Matrix& acquisition_points);

/// Scores of every pool entry; OpenMP over candidates.
[[nodiscard]] std::vector<double> score_pool(const BinnModel& model, const std::vector<Vector>& pool,
                                             const Matrix& acquisition_points);
[[nodiscard]] std::vector<double> score_pool_serial(const BinnModel& model, const std::vector<Vector>& pool,
                                                    const Matrix& acquisition_points);

struct Selection {
    std::size_t index = 0;
    Vector theta;
    double score = 0.0;
};

/// First index of the maximum score (ties go to the lowest index).
[[nodiscard]] std::size_t argmax_first(const std::vector<double>& scores);

[[nodiscard]] Selection select_next(const BinnModel& model, const std::vector<Vector>& pool,
                                    const Matrix& acquisition_points);

struct CampaignConfig {
    std::size_t rounds = 10;
    std::size_t init_size = 6;
    std::size_t validation_size = 2;
    std::uint64_t seed = 0;
    std::vector<Vector> pool;
    /// Scoring points; the source's spatial points when empty.
    Matrix acquisition_points;
};

struct RoundRecord {
    std::size_t round = 0;
    Vector selected_parameter;  // empty for round 0
    double score = 0.0;
    std::size_t pool_size = 0;
    std::size_t train_size = 0;
    double validation_rmse = 0.0;
    double fit_seconds = 0.0;
};

struct CampaignResult {
    std::vector<BinnModel> models;  // f_0 .. f_T
    std::vector<double> rmse_history;
    std::vector<RoundRecord> log;
    AcquisitionState final_state;
};

using RoundCallback = std::function<void(const RoundRecord&)>;

[[nodiscard]] CampaignResult run_campaign(const LabelSource& source, const ModelConfig& config,
                                          const CampaignConfig& al, const RoundCallback& on_round = {});

/// Equally spaced values in [lo, hi] (count >= 2) or the midpoint (count == 1).
[[nodiscard]] std::vector<Vector> linspace_pool(double lo, double hi, std::size_t count);

/// Tensor-product pool of (a, b) pairs, a varying slowest.
[[nodiscard]] std::vector<Vector> grid_pool_2d(double a_lo, double a_hi, std::size_t a_count, double b_lo,
                                               double b_hi, std::size_t b_count);

/// Default model settings for campaigns on the bundled problems (inputs are min-max scaled).
[[nodiscard]] ModelConfig poisson_al_config();
[[nodiscard]] ModelConfig heat_al_config();

struct CampaignSummary {
    double init_rmse = 0.0;
    double best_rmse = 0.0;
    double final_rmse = 0.0;
    double pct_improvement = 0.0;
    std::size_t best_round = 0;
};

/// pct_improvement = 100 (init - final) / init.
[[nodiscard]] double pct_improvement(double init_rmse, double final_rmse);
[[nodiscard]] CampaignSummary summarize(const std::vector<double>& rmse_history);

}  // namespace binn::active
