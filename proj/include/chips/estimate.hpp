#pragma once

#include <cstdint>
#include <vector>

#include "chips/draw_store.hpp"
#include "chips/greedy.hpp"
#include "chips/partition.hpp"

namespace chips {

enum class Loss { binder, vi };

// Pairwise co-clustering counts over all draws (symmetric, diagonal = M).
class CoclusterCounts {
public:
    static CoclusterCounts compute(const DrawSet& ds, unsigned threads = 0);

    std::int64_t count(std::int32_t i, std::int32_t j) const {
        return counts_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                       static_cast<std::size_t>(j)];
    }
    std::int32_t item_count() const { return n_; }
    std::int64_t draw_count() const { return m_; }

private:
    std::int32_t n_ = 0;
    std::int64_t m_ = 0;
    std::vector<std::int64_t> counts_;
};

// Posterior expected loss of a full candidate partition.
//   binder: sum over pairs of 1{same}(1 - P_ij) + 1{diff} P_ij with P the
//           empirical co-clustering fraction;
//   vi:     mean over draws of the variation of information, in nats.
double expected_loss(const DrawSet& ds, const Partition& candidate, Loss loss);

// Binder expected loss shifted by a candidate-independent constant and scaled
// by M: sum over same-cluster pairs of (M - 2 * count_ij). Exact integer, so
// candidates can be ranked without floating-point ties.
std::int64_t binder_objective(const CoclusterCounts& counts, const Partition& candidate);

// Variation of information between two partitions of the same items, nats.
double variation_of_information(const Partition& a, const Partition& b);

// Completes the region's subpartition to a full partition by expected-loss
// minimization with the subpartition's co-membership frozen: free items are
// placed by sequential greedy allocation in a seeded random order, then
// single-item sweep passes run until no move improves (capped), best of
// `restarts` restarts wins. The core items are never moved.
Partition complete_partition(const DrawSet& ds, const ChipsRegion& region, Loss loss,
                             std::int32_t restarts, std::uint64_t seed);

}  // namespace chips
