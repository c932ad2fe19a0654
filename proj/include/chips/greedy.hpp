#pragma once

#include <cstdint>
#include <vector>

#include "chips/draw_store.hpp"
#include "chips/partition.hpp"

namespace chips {

// One run of the forward greedy construction: starting from a single item,
// items are added one at a time, each step choosing the (item, placement)
// pair that keeps the largest number of posterior draws consistent, exact
// ties broken uniformly at random with the run's seeded generator.
struct GreedyTrace {
    std::int32_t start = 0;              // first item of the run
    std::vector<std::int32_t> order;     // permutation: order of inclusion
    std::vector<std::int64_t> counts;    // counts[l-1]: consistent draws at size l
    std::int64_t draw_count = 0;         // denominator M
    std::vector<std::int32_t> final_labels;  // canonical labels of the grown partition

    Partition final_partition() const;
    double probability_at(std::int32_t size) const {
        return static_cast<double>(counts[static_cast<std::size_t>(size - 1)]) /
               static_cast<double>(draw_count);
    }
    // Prefix subpartition of the grown partition at the given size.
    Subpartition prefix(std::int32_t size) const;
    // Largest size whose probability is still >= gamma (always >= 1).
    std::int32_t attained_size(double gamma) const;
};

// The selected credible region: the size-n0 prefix subpartition with maximal
// probability among all traces, where n0 is the largest size any trace holds
// at probability >= gamma.
struct ChipsRegion {
    Subpartition subpartition;
    std::int32_t n0 = 0;
    double gamma = 0.0;
    std::int64_t count = 0;       // consistent draws for the subpartition
    std::int64_t draw_count = 0;  // M
    double probability = 0.0;     // count / draw_count
    std::int32_t trace_id = 0;    // index into the trace list
};

struct ChipsResult {
    ChipsRegion region;
    std::vector<GreedyTrace> traces;
    // Number of traces that tied for the selected region (1 = unique).
    std::int32_t selection_ties = 1;
};

// Runs the greedy construction from `start`. Reproducible given
// (ds, start, seed); probability sequences are nonincreasing by
// construction.
GreedyTrace greedy_run(const DrawSet& ds, std::int32_t start, std::uint64_t seed);

// Multi-start search. Per-run seeds derive from (master_seed, run index), so
// results are independent of execution order; runs execute in parallel over
// at most `threads` workers (0 = hardware default) with bit-identical output
// either way. Ties for the best region are broken uniformly at random with a
// generator derived from master_seed.
ChipsResult run_chips(const DrawSet& ds, double gamma, const std::vector<std::int32_t>& starts,
                      std::uint64_t master_seed, unsigned threads = 0);

// n_runs starts sampled with replacement from 0..n-1.
std::vector<std::int32_t> sample_starts(std::int32_t n, std::int32_t n_runs, std::uint64_t seed);

// Stability diagnostic: run_chips repeated with independently sampled start
// lists. Multiple distinct optima signal too few draws or too few runs.
struct StabilityRepeat {
    std::int32_t n0 = 0;
    std::int64_t count = 0;
    double probability = 0.0;
    double auchips = 0.0;
    std::int32_t selection_ties = 1;
};

struct StabilityReport {
    double gamma = 0.0;
    std::int32_t n_runs = 0;
    std::int32_t repeats = 0;
    std::vector<StabilityRepeat> runs;
    std::int32_t distinct_subpartitions = 0;
    bool any_selection_ties = false;
    double auchips_mean = 0.0;
    double auchips_sd = 0.0;
    double auchips_min = 0.0;
    double auchips_max = 0.0;
};

StabilityReport stability_report(const DrawSet& ds, double gamma, std::int32_t n_runs,
                                 std::int32_t repeats, std::uint64_t master_seed,
                                 unsigned threads = 0);

}  // namespace chips
