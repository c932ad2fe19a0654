#include "chips/infer.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <cmath>

#include "chips/error.hpp"

namespace chips {

namespace {

constexpr const char* kComponent = "infer";
constexpr double kRidgeEps = 1e-8;

Eigen::MatrixXd to_eigen(const std::vector<std::vector<double>>& rows) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

}  // namespace

void ParamTable::insert(std::int64_t draw, std::int32_t label, std::vector<double> value) {
    if (draw < 0 || draw >= draw_count())
        throw_input(kComponent, "parameter entry refers to a draw outside the set");
    if (value.empty()) throw_input(kComponent, "parameter vectors must be non-empty");
    if (dim_ == 0)
        dim_ = static_cast<std::int32_t>(value.size());
    else if (static_cast<std::int32_t>(value.size()) != dim_)
        throw_input(kComponent, "parameter vectors must share one dimension");
    auto [it, inserted] =
        per_draw_[static_cast<std::size_t>(draw)].emplace(label, std::move(value));
    (void)it;
    if (!inserted) throw_input(kComponent, "duplicate parameter entry for (draw, label)");
}

const std::vector<double>* ParamTable::find(std::int64_t draw, std::int32_t label) const {
    if (draw < 0 || draw >= draw_count()) return nullptr;
    const auto& table = per_draw_[static_cast<std::size_t>(draw)];
    const auto it = table.find(label);
    return it == table.end() ? nullptr : &it->second;
}

std::vector<std::vector<double>> conditional_samples(const DrawSet& ds, const ParamTable& params,
                                                     const ChipsRegion& region,
                                                     std::int32_t cluster_index) {
    if (region.draw_count != ds.draw_count())
        throw_input(kComponent, "region was not produced from this draw set");
    if (params.draw_count() != ds.draw_count())
        throw_input(kComponent, "parameter table covers a different number of draws");
    const Subpartition& sub = region.subpartition;
    if (cluster_index < 1 || cluster_index > sub.cluster_count())
        throw_input(kComponent, "cluster index outside the subpartition");

    // Any member identifies the containing draw cluster: in a consistent draw
    // all members of the subpartition cluster share one label.
    const std::int32_t witness = sub.representatives()[static_cast<std::size_t>(cluster_index - 1)];
    const ConsistencyMask mask = mask_for(ds, sub);
    if (mask.count == 0) throw_input(kComponent, "no draw is consistent with the subpartition");

    std::vector<std::vector<double>> samples;
    samples.reserve(static_cast<std::size_t>(mask.count));
    for (std::int64_t m = 0; m < ds.draw_count(); ++m) {
        if (!mask.bits[static_cast<std::size_t>(m)]) continue;
        const std::int32_t label = ds.row(m)[witness];
        const std::vector<double>* value = params.find(m, label);
        if (value == nullptr)
            throw_input(kComponent, "missing parameter entry for draw " + std::to_string(m + 1) +
                                        ", cluster label " + std::to_string(label));
        samples.push_back(*value);
    }
    return samples;
}

ClusterCredibleRegion credible_region(const std::vector<std::vector<double>>& samples, double alpha,
                                      double region_probability) {
    if (samples.size() < 2) throw_input(kComponent, "credible region needs at least two samples");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw_input(kComponent, "alpha must lie in (0, 1]");
    const std::size_t count = samples.size();
    const std::size_t dim = samples.front().size();
    for (const auto& s : samples)
        if (s.size() != dim) throw_input(kComponent, "samples must share one dimension");

    ClusterCredibleRegion region;
    region.samples = samples;
    region.alpha = alpha;
    region.joint_bound = alpha * region_probability;

    // Equal-tailed interval: trim floor((1-alpha)/2 * count) order statistics
    // from each side, which leaves at least alpha * count samples inside.
    const auto cut = static_cast<std::size_t>(
        std::floor((1.0 - alpha) / 2.0 * static_cast<double>(count)));
    region.lower.resize(dim);
    region.upper.resize(dim);
    std::vector<double> coordinate(count);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < count; ++i) coordinate[i] = samples[i][j];
        std::sort(coordinate.begin(), coordinate.end());
        region.lower[j] = coordinate[cut];
        region.upper[j] = coordinate[count - 1 - cut];
    }

    const Eigen::MatrixXd data = to_eigen(samples);
    const Eigen::VectorXd mean = data.colwise().mean();
    const Eigen::MatrixXd centered = data.rowwise() - mean.transpose();
    Eigen::MatrixXd cov =
        centered.transpose() * centered / static_cast<double>(count - 1);

    region.center.assign(mean.data(), mean.data() + dim);
    region.covariance.assign(dim, std::vector<double>(dim));
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b)
            region.covariance[a][b] =
                cov(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));

    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        cov.diagonal().array() += kRidgeEps * cov.trace() / static_cast<double>(dim);
        llt.compute(cov);
    }
    if (llt.info() != Eigen::Success) {
        region.degenerate = true;
        region.radius2 = 0.0;
        return region;
    }

    // Squared radius: the ceil(alpha * count)-th smallest squared Mahalanobis
    // distance, so at least alpha * count samples fall inside.
    std::vector<double> distances(count);
    for (std::size_t i = 0; i < count; ++i) {
        const Eigen::VectorXd v = centered.row(static_cast<Eigen::Index>(i)).transpose();
        distances[i] = v.dot(llt.solve(v));
    }
    std::sort(distances.begin(), distances.end());
    auto rank = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(count)));
    rank = std::clamp<std::size_t>(rank, 1, count);
    region.radius2 = distances[rank - 1];
    return region;
}

bool ellipsoid_contains(const ClusterCredibleRegion& region, const std::vector<double>& point) {
    if (region.degenerate) return false;
    const auto dim = static_cast<Eigen::Index>(region.center.size());
    if (static_cast<Eigen::Index>(point.size()) != dim)
        throw_input(kComponent, "point dimension does not match the region");
    Eigen::MatrixXd cov(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a)
        for (Eigen::Index b = 0; b < dim; ++b)
            cov(a, b) = region.covariance[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        cov.diagonal().array() += kRidgeEps * cov.trace() / static_cast<double>(dim);
        llt.compute(cov);
        if (llt.info() != Eigen::Success) return false;
    }
    Eigen::VectorXd v(dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        v(j) = point[static_cast<std::size_t>(j)] - region.center[static_cast<std::size_t>(j)];
    return v.dot(llt.solve(v)) <= region.radius2;
}

}  // namespace chips
