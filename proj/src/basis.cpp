#include "binn/basis.hpp"

#include <algorithm>
#include <cmath>

namespace binn {

BasisSpec::BasisSpec(std::vector<double> c, double l) : centers(std::move(c)), length_scale(l) {
    if (!(length_scale > 0.0) || !std::isfinite(length_scale)) throw InvalidArgument("basis length scale must be > 0");
    if (centers.empty()) throw InvalidArgument("basis needs at least one center");
    for (double v : centers) {
        if (!std::isfinite(v)) throw InvalidArgument("basis centers must be finite");
    }
}

void eval_basis_into(const BasisSpec& spec, double x, std::span<double> out) {
    const double inv = 1.0 / (2.0 * spec.length_scale * spec.length_scale);
    for (std::size_t j = 0; j < spec.centers.size(); ++j) {
        const double r = x - spec.centers[j];
        out[j] = std::exp(-r * r * inv);
    }
}

Vector eval_basis(const BasisSpec& spec, double x) {
    if (!std::isfinite(x)) throw InvalidArgument("eval_basis: non-finite input");
    Vector phi(static_cast<Eigen::Index>(spec.size()));
    eval_basis_into(spec, x, {phi.data(), spec.size()});
    return phi;
}

Matrix basis_matrix(const BasisSpec& spec, const Eigen::Ref<const Vector>& xs) {
    if (!xs.allFinite()) throw InvalidArgument("basis_matrix: non-finite input");
    // Row-major fill so each point writes a contiguous row, then hand back column-major.
    RowMatrix phi(xs.size(), static_cast<Eigen::Index>(spec.size()));
    for (Eigen::Index i = 0; i < xs.size(); ++i) {
        eval_basis_into(spec, xs(i), {phi.row(i).data(), spec.size()});
    }
    return phi;
}

std::vector<double> equispaced_centers(std::size_t count, double lo, double hi) {
    if (count == 0) throw InvalidArgument("equispaced_centers: need at least one center");
    if (!(hi > lo)) throw InvalidArgument("equispaced_centers: need hi > lo");
    if (count == 1) return {0.5 * (lo + hi)};
    std::vector<double> c(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t j = 0; j < count; ++j) c[j] = lo + step * static_cast<double>(j);
    c.back() = hi;
    return c;
}

std::vector<double> unique_centers(const Eigen::Ref<const Vector>& xs, double tol) {
    std::vector<double> v(xs.data(), xs.data() + xs.size());
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v) {
        if (out.empty() || x - out.back() > tol) out.push_back(x);
    }
    return out;
}

}  // namespace binn
