#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "chips/draw_store.hpp"
#include "chips/greedy.hpp"

namespace chips {

// Cluster-parameter draws keyed by (draw index, draw-local canonical cluster
// label). Parameter dimension is fixed by the first insertion.
class ParamTable {
public:
    ParamTable() = default;
    explicit ParamTable(std::int64_t draw_count)
        : per_draw_(static_cast<std::size_t>(draw_count)) {}

    void insert(std::int64_t draw, std::int32_t label, std::vector<double> value);
    const std::vector<double>* find(std::int64_t draw, std::int32_t label) const;

    std::int64_t draw_count() const { return static_cast<std::int64_t>(per_draw_.size()); }
    std::int32_t dim() const { return dim_; }
    bool empty() const { return dim_ == 0; }

private:
    std::int32_t dim_ = 0;
    std::vector<std::unordered_map<std::int32_t, std::vector<double>>> per_draw_;
};

// Parameter draws for the region's cluster j pooled over the draws in which
// the subpartition holds. In each such draw the subpartition's cluster j is
// contained in exactly one draw cluster; that cluster's parameter is taken,
// so the samples reflect both parameter and membership variability. Output
// length equals the number of consistent draws.
std::vector<std::vector<double>> conditional_samples(const DrawSet& ds, const ParamTable& params,
                                                     const ChipsRegion& region,
                                                     std::int32_t cluster_index);

// Credible region for one cluster parameter from pooled conditional samples.
// The joint statement "subpartition holds and the parameter lies in the
// region" carries posterior probability at least alpha times the region
// probability.
struct ClusterCredibleRegion {
    std::int32_t cluster_index = 0;
    std::vector<std::vector<double>> samples;
    double alpha = 0.0;
    double joint_bound = 0.0;
    // Per-coordinate empirical equal-tailed interval (covers >= alpha of the
    // samples in every coordinate).
    std::vector<double> lower;
    std::vector<double> upper;
    // Ellipsoid: sample mean, sample covariance, and the empirical alpha
    // quantile of squared Mahalanobis distances (covers >= alpha of the
    // samples). `degenerate` marks a covariance that stayed singular after
    // the ridge repair; the interval is still valid then.
    std::vector<double> center;
    std::vector<std::vector<double>> covariance;
    double radius2 = 0.0;
    bool degenerate = false;
};

// alpha in (0, 1]; needs at least two samples of equal dimension.
ClusterCredibleRegion credible_region(const std::vector<std::vector<double>>& samples, double alpha,
                                      double region_probability);

// True iff the point lies in the region's ellipsoid (squared Mahalanobis
// distance <= radius2). False for degenerate regions.
bool ellipsoid_contains(const ClusterCredibleRegion& region, const std::vector<double>& point);

}  // namespace chips
