#include "chips/metrics.hpp"

#include <algorithm>

#include "chips/error.hpp"
#include "chips/parallel.hpp"

namespace chips {

namespace {

constexpr const char* kComponent = "metrics";

}  // namespace

ChipsCurve chips_curve(const std::vector<GreedyTrace>& traces) {
    if (traces.empty()) throw_input(kComponent, "curve needs at least one trace");
    const std::size_t n = traces.front().counts.size();
    const std::int64_t draws = traces.front().draw_count;
    for (const GreedyTrace& t : traces)
        if (t.counts.size() != n || t.draw_count != draws)
            throw_input(kComponent, "traces cover different item or draw counts");

    ChipsCurve curve;
    curve.draw_count = draws;
    curve.best_counts.assign(n, 0);
    for (const GreedyTrace& t : traces)
        for (std::size_t l = 0; l < n; ++l)
            curve.best_counts[l] = std::max(curve.best_counts[l], t.counts[l]);

    curve.values.resize(n);
    std::int64_t total = 0;
    for (std::size_t l = 0; l < n; ++l) {
        curve.values[l] = static_cast<double>(curve.best_counts[l]) / static_cast<double>(draws);
        total += curve.best_counts[l];
    }
    curve.auchips = static_cast<double>(total) /
                    (static_cast<double>(n) * static_cast<double>(draws));
    return curve;
}

std::vector<UnitUncertainty> unit_uncertainty(const DrawSet& ds, const ChipsRegion& region,
                                              unsigned threads) {
    if (region.draw_count != ds.draw_count())
        throw_input(kComponent, "region was not produced from this draw set");
    const std::int32_t n = ds.item_count();
    const Subpartition& sub = region.subpartition;

    std::vector<bool> included(static_cast<std::size_t>(n), false);
    for (std::int32_t pos = 0; pos < sub.size(); ++pos) {
        const std::int32_t item = sub.item(pos);
        if (item < 0 || item >= n)
            throw_input(kComponent, "region subpartition item outside the draw set");
        included[static_cast<std::size_t>(item)] = true;
    }
    std::vector<std::int32_t> excluded;
    for (std::int32_t i = 0; i < n; ++i)
        if (!included[static_cast<std::size_t>(i)]) excluded.push_back(i);

    const ConsistencyMask mask = mask_for(ds, sub);
    if (mask.count != region.count)
        throw_input(kComponent, "region probability does not match this draw set");
    const std::vector<std::int32_t> reps = sub.representatives();

    std::vector<UnitUncertainty> out(excluded.size());
    parallel_for(excluded.size(), threads, [&](std::size_t idx) {
        const std::int32_t item = excluded[idx];
        const std::vector<std::int64_t> counts = extension_counts(ds, mask, reps, item);
        UnitUncertainty u;
        u.item = item;
        u.best_count = -1;
        for (std::size_t t = 0; t < counts.size(); ++t) {
            if (counts[t] > u.best_count) {
                u.best_count = counts[t];
                u.best_placement = static_cast<std::int32_t>(t) + 1;
                u.placement_ties = 1;
            } else if (counts[t] == u.best_count) {
                ++u.placement_ties;
            }
        }
        u.q_max = static_cast<double>(u.best_count) / static_cast<double>(ds.draw_count());
        u.drop = region.probability - u.q_max;
        out[idx] = u;
    });
    return out;
}

}  // namespace chips
