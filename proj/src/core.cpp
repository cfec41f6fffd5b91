#include "binn/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace binn {

Dataset::Dataset(Matrix inputs, Vector targets) : inputs_(std::move(inputs)), targets_(std::move(targets)) {
    if (inputs_.rows() != targets_.size()) {
        std::ostringstream msg;
        msg << "dataset has " << inputs_.rows() << " input rows but " << targets_.size() << " targets";
        throw InvalidArgument(msg.str());
    }
    if (!inputs_.allFinite() || !targets_.allFinite()) {
        throw InvalidArgument("dataset contains non-finite entries");
    }
}

Dataset Dataset::empty(std::size_t dims) {
    return Dataset(Matrix(0, static_cast<Eigen::Index>(dims)), Vector(0));
}

Dataset Dataset::concat(const Dataset& other) const {
    if (is_empty() && inputs_.cols() == 0) return other;
    if (other.dims() != dims()) {
        throw DimensionMismatch("cannot concatenate datasets of dimension " + std::to_string(dims()) + " and " +
                                std::to_string(other.dims()));
    }
    Matrix x(inputs_.rows() + other.inputs_.rows(), inputs_.cols());
    x << inputs_, other.inputs_;
    Vector y(targets_.size() + other.targets_.size());
    y << targets_, other.targets_;
    return Dataset(std::move(x), std::move(y));
}

Dataset Dataset::select(const std::vector<std::size_t>& rows) const {
    Matrix x(static_cast<Eigen::Index>(rows.size()), inputs_.cols());
    Vector y(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(rows[i]);
        if (r >= inputs_.rows()) throw InvalidArgument("row index out of range");
        x.row(static_cast<Eigen::Index>(i)) = inputs_.row(r);
        y(static_cast<Eigen::Index>(i)) = targets_(r);
    }
    return Dataset(std::move(x), std::move(y));
}

// Scaler ---------------------------------------------------------------------

Scaler::Scaler(std::vector<double> lo, std::vector<double> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size()) throw InvalidArgument("scaler bounds differ in length");
    for (std::size_t d = 0; d < lo_.size(); ++d) {
        if (!std::isfinite(lo_[d]) || !std::isfinite(hi_[d])) throw InvalidArgument("scaler bounds must be finite");
        if (hi_[d] < lo_[d]) throw InvalidArgument("scaler max < min in dimension " + std::to_string(d));
    }
}

double Scaler::transform(std::size_t d, double x) const {
    const double lo = lo_.at(d);
    const double hi = hi_.at(d);
    if (hi == lo) return 0.5;
    return (x - lo) / (hi - lo);
}

double Scaler::inverse(std::size_t d, double u) const {
    const double lo = lo_.at(d);
    const double hi = hi_.at(d);
    if (hi == lo) return lo;
    return lo + u * (hi - lo);
}

Matrix Scaler::transform(const Matrix& x) const {
    if (static_cast<std::size_t>(x.cols()) != dims()) {
        throw DimensionMismatch("scaler has " + std::to_string(dims()) + " dimensions, input has " +
                                std::to_string(x.cols()));
    }
    Matrix u(x.rows(), x.cols());
    for (Eigen::Index d = 0; d < x.cols(); ++d) {
        for (Eigen::Index i = 0; i < x.rows(); ++i) u(i, d) = transform(static_cast<std::size_t>(d), x(i, d));
    }
    return u;
}

Matrix Scaler::inverse(const Matrix& u) const {
    if (static_cast<std::size_t>(u.cols()) != dims()) throw DimensionMismatch("scaler dimension mismatch");
    Matrix x(u.rows(), u.cols());
    for (Eigen::Index d = 0; d < u.cols(); ++d) {
        for (Eigen::Index i = 0; i < u.rows(); ++i) x(i, d) = inverse(static_cast<std::size_t>(d), u(i, d));
    }
    return x;
}

bool Scaler::contains(const Eigen::Ref<const Vector>& x) const {
    if (static_cast<std::size_t>(x.size()) != dims()) throw DimensionMismatch("scaler dimension mismatch");
    for (std::size_t d = 0; d < dims(); ++d) {
        const double v = x(static_cast<Eigen::Index>(d));
        if (v < lo_[d] || v > hi_[d]) return false;
    }
    return true;
}

Vector Scaler::clamp(const Eigen::Ref<const Vector>& x) const {
    if (static_cast<std::size_t>(x.size()) != dims()) throw DimensionMismatch("scaler dimension mismatch");
    Vector out = x;
    for (std::size_t d = 0; d < dims(); ++d) {
        out(static_cast<Eigen::Index>(d)) = std::clamp(out(static_cast<Eigen::Index>(d)), lo_[d], hi_[d]);
    }
    return out;
}

Scaler fit_scaler(const Matrix& inputs) {
    if (inputs.rows() == 0) throw InvalidArgument("cannot fit a scaler to an empty dataset");
    std::vector<double> lo(static_cast<std::size_t>(inputs.cols()));
    std::vector<double> hi(lo.size());
    for (Eigen::Index d = 0; d < inputs.cols(); ++d) {
        lo[static_cast<std::size_t>(d)] = inputs.col(d).minCoeff();
        hi[static_cast<std::size_t>(d)] = inputs.col(d).maxCoeff();
    }
    return Scaler(std::move(lo), std::move(hi));
}

Scaler fit_scaler(const Dataset& data) { return fit_scaler(data.inputs()); }

// Config ---------------------------------------------------------------------

std::string to_string(CenterPlacement p) {
    return p == CenterPlacement::Equispaced ? "equispaced" : "at_training_points";
}

CenterPlacement center_placement_from_string(const std::string& s) {
    if (s == "equispaced") return CenterPlacement::Equispaced;
    if (s == "at_training_points") return CenterPlacement::AtTrainingPoints;
    throw InvalidArgument("unknown center placement '" + s + "'");
}

void ModelConfig::validate() const {
    if (modes < 1) throw InvalidArgument("modes must be >= 1");
    if (basis_counts.empty()) throw InvalidArgument("basis_counts must not be empty");
    if (length_scales.empty()) throw InvalidArgument("length_scales must not be empty");
    for (auto j : basis_counts) {
        if (j < 1) throw InvalidArgument("every basis count must be >= 1");
    }
    for (auto l : length_scales) {
        if (!(l > 0.0) || !std::isfinite(l)) throw InvalidArgument("every length scale must be > 0");
    }
    if (!(prior_variance > 0.0) || !std::isfinite(prior_variance)) throw InvalidArgument("prior_variance must be > 0");
    if (!(noise_variance > 0.0) || !std::isfinite(noise_variance)) throw InvalidArgument("noise_variance must be > 0");
    if (!(jitter >= 0.0) || !std::isfinite(jitter)) throw InvalidArgument("jitter must be >= 0");
    if (early_stop_patience && *early_stop_patience < 1) throw InvalidArgument("early_stop_patience must be >= 1");
}

ModelConfig ModelConfig::resolved_for(std::size_t dims) const {
    validate();
    ModelConfig out = *this;
    auto expand = [dims](auto& v, const char* name) {
        if (v.size() == dims) return;
        if (v.size() == 1) {
            v.assign(dims, v.front());
            return;
        }
        throw InvalidArgument(std::string(name) + " has " + std::to_string(v.size()) + " entries for " +
                              std::to_string(dims) + " input dimensions");
    };
    expand(out.basis_counts, "basis_counts");
    expand(out.length_scales, "length_scales");
    return out;
}

// Misc -----------------------------------------------------------------------

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
    // FNV-1a over the tag, then mixed with the seed.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return splitmix64(seed ^ splitmix64(h));
}

double rmse(const Vector& predicted, const Vector& actual) {
    if (predicted.size() != actual.size()) throw DimensionMismatch("rmse: size mismatch");
    if (predicted.size() == 0) throw InvalidArgument("rmse of an empty set");
    return std::sqrt((predicted - actual).squaredNorm() / static_cast<double>(predicted.size()));
}

}  // namespace binn
