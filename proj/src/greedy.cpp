#include "chips/greedy.hpp"

#include <algorithm>
#include <optional>
#include <span>

#include "chips/error.hpp"
#include "chips/kernels.hpp"
#include "chips/parallel.hpp"
#include "chips/rng.hpp"

namespace chips {

namespace {

constexpr const char* kComponent = "chips";

}  // namespace

Partition GreedyTrace::final_partition() const {
    return Partition::canonicalize(std::span<const std::int32_t>(final_labels));
}

Subpartition GreedyTrace::prefix(std::int32_t size) const {
    const Partition p = final_partition();
    return restrict_to(p, std::span<const std::int32_t>(order.data(),
                                                        static_cast<std::size_t>(size)));
}

std::int32_t GreedyTrace::attained_size(double gamma) const {
    const double threshold = gamma * static_cast<double>(draw_count);
    std::int32_t best = 1;
    for (std::int32_t l = static_cast<std::int32_t>(counts.size()); l >= 1; --l) {
        if (static_cast<double>(counts[static_cast<std::size_t>(l - 1)]) >= threshold) {
            best = l;
            break;
        }
    }
    return best;
}

GreedyTrace greedy_run(const DrawSet& ds, std::int32_t start, std::uint64_t seed) {
    const std::int32_t n = ds.item_count();
    const std::int64_t draws = ds.draw_count();
    if (start < 0 || start >= n) throw_input(kComponent, "start item out of range");

    const auto& kernels = kern::active_kernels();
    Rng rng(seed);

    GreedyTrace trace;
    trace.start = start;
    trace.draw_count = draws;
    trace.order.reserve(static_cast<std::size_t>(n));
    trace.counts.reserve(static_cast<std::size_t>(n));
    trace.order.push_back(start);
    trace.counts.push_back(draws);  // a single-item subpartition holds in every draw
    trace.final_labels.assign(static_cast<std::size_t>(n), 0);
    trace.final_labels[static_cast<std::size_t>(start)] = 1;

    ConsistencyMask mask = full_mask(ds);
    std::vector<std::int32_t> reps{start};
    std::vector<std::int32_t> remaining;
    remaining.reserve(static_cast<std::size_t>(n) - 1);
    for (std::int32_t i = 0; i < n; ++i)
        if (i != start) remaining.push_back(i);

    struct Candidate {
        std::int32_t item;
        std::int32_t placement;
    };
    std::vector<Candidate> ties;
    std::vector<std::int64_t> counts_scratch;

    while (!remaining.empty()) {
        const auto k = static_cast<std::int32_t>(reps.size());
        counts_scratch.assign(static_cast<std::size_t>(k) + 1, 0);
        std::int64_t best = -1;
        ties.clear();
        // Fixed evaluation order (items ascending, placements 1..k+1) keeps
        // the tie list, and hence the seeded choice, reproducible.
        for (std::int32_t item : remaining) {
            const std::int32_t* item_col = ds.column(item);
            std::int64_t joined = 0;
            for (std::int32_t t = 0; t < k; ++t) {
                counts_scratch[static_cast<std::size_t>(t)] = kernels.count_masked_eq(
                    mask.bits.data(), item_col, ds.column(reps[static_cast<std::size_t>(t)]),
                    mask.bits.size());
                joined += counts_scratch[static_cast<std::size_t>(t)];
            }
            counts_scratch[static_cast<std::size_t>(k)] = mask.count - joined;
            for (std::int32_t t = 0; t <= k; ++t) {
                const std::int64_t c = counts_scratch[static_cast<std::size_t>(t)];
                if (c > best) {
                    best = c;
                    ties.clear();
                }
                if (c == best) ties.push_back({item, t + 1});
            }
        }

        const Candidate pick =
            ties[static_cast<std::size_t>(rng.uniform_below(ties.size()))];

        if (pick.placement <= k) {
            mask.count = kernels.mask_and_eq(
                mask.bits.data(), ds.column(pick.item),
                ds.column(reps[static_cast<std::size_t>(pick.placement - 1)]), mask.bits.size());
        } else {
            for (std::int32_t rep : reps)
                mask.count = kernels.mask_and_ne(mask.bits.data(), ds.column(pick.item),
                                                 ds.column(rep), mask.bits.size());
            reps.push_back(pick.item);
        }
        if (mask.count != best)
            throw_internal(kComponent, "applied extension count disagrees with evaluated count");

        trace.final_labels[static_cast<std::size_t>(pick.item)] = pick.placement;
        trace.order.push_back(pick.item);
        trace.counts.push_back(mask.count);
        remaining.erase(std::find(remaining.begin(), remaining.end(), pick.item));
    }

    return trace;
}

ChipsResult run_chips(const DrawSet& ds, double gamma, const std::vector<std::int32_t>& starts,
                      std::uint64_t master_seed, unsigned threads) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw_input(kComponent, "gamma must lie strictly between 0 and 1");
    if (starts.empty()) throw_input(kComponent, "at least one starting item is required");
    for (std::int32_t s : starts)
        if (s < 0 || s >= ds.item_count()) throw_input(kComponent, "start item out of range");

    std::vector<std::optional<GreedyTrace>> slots(starts.size());
    parallel_for(starts.size(), threads, [&](std::size_t i) {
        slots[i] = greedy_run(ds, starts[i],
                              derive_seed(master_seed, SeedStream::greedy_run, i));
    });
    std::vector<GreedyTrace> traces;
    traces.reserve(slots.size());
    for (auto& slot : slots) traces.push_back(std::move(*slot));

    std::int32_t n0 = 1;
    for (const GreedyTrace& t : traces) n0 = std::max(n0, t.attained_size(gamma));

    const double threshold = gamma * static_cast<double>(ds.draw_count());
    std::int64_t best_count = -1;
    std::vector<std::int32_t> candidates;
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const std::int64_t c = traces[i].counts[static_cast<std::size_t>(n0 - 1)];
        if (static_cast<double>(c) < threshold) continue;
        if (c > best_count) {
            best_count = c;
            candidates.clear();
        }
        if (c == best_count) candidates.push_back(static_cast<std::int32_t>(i));
    }
    if (candidates.empty())
        throw_internal(kComponent, "no trace attains the selected subpartition size");

    Rng selection_rng(derive_seed(master_seed, SeedStream::selection, 0));
    const std::int32_t chosen =
        candidates[static_cast<std::size_t>(selection_rng.uniform_below(candidates.size()))];

    ChipsResult result{
        ChipsRegion{traces[static_cast<std::size_t>(chosen)].prefix(n0), n0, gamma, best_count,
                    ds.draw_count(),
                    static_cast<double>(best_count) / static_cast<double>(ds.draw_count()),
                    chosen},
        std::move(traces), static_cast<std::int32_t>(candidates.size())};
    return result;
}

std::vector<std::int32_t> sample_starts(std::int32_t n, std::int32_t n_runs, std::uint64_t seed) {
    if (n_runs < 1) throw_input(kComponent, "number of runs must be at least 1");
    Rng rng(seed);
    std::vector<std::int32_t> starts(static_cast<std::size_t>(n_runs));
    for (auto& s : starts)
        s = static_cast<std::int32_t>(rng.uniform_below(static_cast<std::uint64_t>(n)));
    return starts;
}

}  // namespace chips
