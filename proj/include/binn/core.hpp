#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binn/error.hpp"

namespace binn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// N rows of D-dimensional inputs with one scalar target per row.
///
/// Construction validates shape agreement and rejects non-finite entries, so
/// every Dataset that exists is usable as-is.
class Dataset {
public:
    Dataset() = default;
    Dataset(Matrix inputs, Vector targets);

    /// Empty dataset with a fixed input dimension.
    static Dataset empty(std::size_t dims);

    [[nodiscard]] const Matrix& inputs() const noexcept { return inputs_; }
    [[nodiscard]] const Vector& targets() const noexcept { return targets_; }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(targets_.size()); }
    [[nodiscard]] std::size_t dims() const noexcept { return static_cast<std::size_t>(inputs_.cols()); }
    [[nodiscard]] bool is_empty() const noexcept { return targets_.size() == 0; }

    /// Rows concatenated; dimensions must agree.
    [[nodiscard]] Dataset concat(const Dataset& other) const;

    /// Subset of rows in the given order.
    [[nodiscard]] Dataset select(const std::vector<std::size_t>& rows) const;

private:
    Matrix inputs_;
    Vector targets_;
};

/// Per-dimension min-max map onto [0, 1]. Constant dimensions map to 0.5.
class Scaler {
public:
    Scaler() = default;
    Scaler(std::vector<double> lo, std::vector<double> hi);

    [[nodiscard]] std::size_t dims() const noexcept { return lo_.size(); }
    [[nodiscard]] const std::vector<double>& lo() const noexcept { return lo_; }
    [[nodiscard]] const std::vector<double>& hi() const noexcept { return hi_; }
    [[nodiscard]] bool is_constant(std::size_t d) const { return hi_.at(d) == lo_.at(d); }

    [[nodiscard]] double transform(std::size_t d, double x) const;
    [[nodiscard]] double inverse(std::size_t d, double u) const;

    [[nodiscard]] Matrix transform(const Matrix& x) const;
    [[nodiscard]] Matrix inverse(const Matrix& u) const;

    /// True when x lies inside [lo, hi] in every dimension.
    [[nodiscard]] bool contains(const Eigen::Ref<const Vector>& x) const;

    /// x clamped into the fitted bounds.
    [[nodiscard]] Vector clamp(const Eigen::Ref<const Vector>& x) const;

private:
    std::vector<double> lo_;
    std::vector<double> hi_;
};

[[nodiscard]] Scaler fit_scaler(const Dataset& data);
[[nodiscard]] Scaler fit_scaler(const Matrix& inputs);

enum class CenterPlacement { Equispaced, AtTrainingPoints };

[[nodiscard]] std::string to_string(CenterPlacement p);
[[nodiscard]] CenterPlacement center_placement_from_string(const std::string& s);

/// Hyperparameters of a B-INN fit.
///
/// `basis_counts` and `length_scales` may hold a single entry, which is then
/// broadcast to every input dimension (see `resolved_for`).
struct ModelConfig {
    std::size_t modes = 1;
    std::vector<std::size_t> basis_counts{20};
    std::vector<double> length_scales{0.5};
    double prior_variance = 1.0;
    double noise_variance = 0.04;
    std::size_t sweeps = 40;
    std::uint64_t seed = 0;
    CenterPlacement center_placement = CenterPlacement::Equispaced;
    double jitter = 1e-10;
    std::optional<std::size_t> early_stop_patience;
    /// Center each block-update prior on the current posterior mean instead of
    /// the fixed prior mean. Keeps redundant modes from shrinking to zero.
    bool proximal_updates = false;

    /// Throws InvalidArgument when any invariant is broken.
    void validate() const;

    /// Copy with per-dimension vectors expanded to length `dims`.
    [[nodiscard]] ModelConfig resolved_for(std::size_t dims) const;
};

// CSV ------------------------------------------------------------------------

/// Raw numeric table: header names plus a row-major value matrix.
struct CsvTable {
    std::vector<std::string> header;
    Matrix values;  // rows x header.size()
};

[[nodiscard]] CsvTable read_csv_table(const std::filesystem::path& path);
void write_csv_table(const CsvTable& table, const std::filesystem::path& path);

/// Last column is the target, remaining columns are inputs.
[[nodiscard]] Dataset load_csv(const std::filesystem::path& path);
void save_csv(const Dataset& data, const std::filesystem::path& path,
              const std::vector<std::string>& header = {});

/// Dataset from selected table columns.
[[nodiscard]] Dataset dataset_from_table(const CsvTable& table, const std::vector<std::size_t>& input_columns,
                                         std::size_t target_column);

/// Formats a double with 17 significant digits (lossless).
[[nodiscard]] std::string format_double(double v);

/// Deterministic sub-seed derivation (splitmix64 of seed ^ hash(tag)).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag);

/// Root-mean-square of (a - b).
[[nodiscard]] double rmse(const Vector& predicted, const Vector& actual);

}  // namespace binn
