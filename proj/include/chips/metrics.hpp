#pragma once

#include <cstdint>
#include <vector>

#include "chips/draw_store.hpp"
#include "chips/greedy.hpp"

namespace chips {

// Best attainable subpartition probability per size, maximized over a family
// of greedy traces, together with the normalized area under that step curve.
// AUChips near 1 means the posterior concentrates; near 0, it is diffuse.
struct ChipsCurve {
    std::vector<std::int64_t> best_counts;  // per size 1..n
    std::int64_t draw_count = 0;
    std::vector<double> values;  // best_counts / draw_count
    double auchips = 0.0;
};

// values[l] = max over traces of the size-l probability. The curve as a
// function of the scaled size t in (0,1] is a step function; its exact
// integral is the mean of the values.
ChipsCurve chips_curve(const std::vector<GreedyTrace>& traces);

// Cost of adding one excluded item to the selected subpartition: the best
// achievable probability over the k0 existing clusters plus a new singleton,
// and the probability given up relative to the region.
struct UnitUncertainty {
    std::int32_t item = 0;
    std::int64_t best_count = 0;
    double q_max = 0.0;
    double drop = 0.0;                 // region probability - q_max
    std::int32_t best_placement = 0;   // 1..k0 joins, k0+1 singleton
    std::int32_t placement_ties = 1;   // placements achieving q_max
};

// One entry per item outside the region's subpartition, ascending by item.
std::vector<UnitUncertainty> unit_uncertainty(const DrawSet& ds, const ChipsRegion& region,
                                              unsigned threads = 0);

}  // namespace chips
