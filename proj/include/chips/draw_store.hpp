#pragma once

#include <cstdint>
#include <vector>

#include "chips/partition.hpp"

namespace chips {

// M posterior draws of a partition over the same n items. Rows are stored in
// canonical label form; a column-major copy of the label matrix feeds the
// comparison kernels. Duplicate draws are retained: they carry posterior
// weight. Immutable after construction and safe to share across threads.
class DrawSet {
public:
    static DrawSet from_partitions(std::vector<Partition> draws);

    // Canonicalizes each row. Convenience for tests and generators.
    static DrawSet from_labels(const std::vector<std::vector<std::int32_t>>& rows);

    std::int32_t item_count() const { return n_; }
    std::int64_t draw_count() const { return m_; }

    // Canonical labels of draw m (n entries).
    const std::int32_t* row(std::int64_t m) const {
        return rows_.data() + static_cast<std::size_t>(m) * static_cast<std::size_t>(n_);
    }

    // Labels of one item across all draws (M entries), kernel operand.
    const std::int32_t* column(std::int32_t item) const {
        return cols_.data() + static_cast<std::size_t>(item) * static_cast<std::size_t>(m_);
    }

    Partition draw(std::int64_t m) const;

private:
    DrawSet() = default;
    std::int32_t n_ = 0;
    std::int64_t m_ = 0;
    std::vector<std::int32_t> rows_;  // M x n, row-major
    std::vector<std::int32_t> cols_;  // n x M, column-major
};

// One byte per draw (0/1): which draws are still consistent with a tracked
// subpartition. Extensions only clear bits, so counts are nonincreasing
// along any extension chain.
struct ConsistencyMask {
    std::vector<std::uint8_t> bits;
    std::int64_t count = 0;
};

ConsistencyMask full_mask(const DrawSet& ds);

// Mask of draws consistent with s, built by the direct per-draw check.
ConsistencyMask mask_for(const DrawSet& ds, const Subpartition& s);

// Number of draws consistent with s. Deliberately non-incremental and
// kernel-free: this is the reference route the incremental machinery is
// validated against.
std::int64_t estimate_count(const DrawSet& ds, const Subpartition& s);

// estimate_count / M.
double estimate_probability(const DrawSet& ds, const Subpartition& s);

// Mask tracking s extended by new_item placed into cluster `placement`
// (1..k joins that cluster, k+1 opens a singleton). Bit m survives iff it was
// set and draw m places new_item accordingly.
ConsistencyMask extend_mask(const DrawSet& ds, const ConsistencyMask& mask, const Subpartition& s,
                            std::int32_t new_item, std::int32_t placement);

// Surviving-draw counts for every placement of `item` against a tracked
// subpartition given by its cluster representatives: entries 0..k-1 are the
// joins, entry k is the new singleton. Requires the mask precondition (bits
// set only on draws consistent with the tracked subpartition); under it the
// representatives carry distinct labels in every surviving draw, so the
// singleton count is the complement of the join counts.
std::vector<std::int64_t> extension_counts(const DrawSet& ds, const ConsistencyMask& mask,
                                           const std::vector<std::int32_t>& representatives,
                                           std::int32_t item);

// Number of draws in which all given items share one cluster (higher-order
// co-clustering count); |items| = 1 gives M.
std::int64_t cluster_count(const DrawSet& ds, const std::vector<std::int32_t>& items);
double cluster_probability(const DrawSet& ds, const std::vector<std::int32_t>& items);

}  // namespace chips
