#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace chips {

// A set partition of items {0, ..., n-1} stored as a canonical label vector:
// labels appear in first-occurrence order starting at 1, so two Partition
// values are equal exactly when they describe the same set partition. Cluster
// labels carry no meaning beyond co-membership.
//
// Item indices are 0-based throughout the library; file formats and reports
// use 1-based indices.
class Partition {
public:
    // Relabels an arbitrary integer label vector into canonical form. The
    // co-membership pattern is preserved exactly.
    static Partition canonicalize(std::span<const std::int32_t> raw_labels);
    static Partition canonicalize(std::span<const std::int64_t> raw_labels);

    std::int32_t size() const { return static_cast<std::int32_t>(labels_.size()); }
    std::int32_t cluster_count() const { return k_; }
    std::int32_t label_of(std::int32_t item) const { return labels_[static_cast<std::size_t>(item)]; }
    const std::vector<std::int32_t>& labels() const { return labels_; }

    bool operator==(const Partition&) const = default;

private:
    Partition() = default;
    template <typename T>
    static Partition canonicalize_impl(std::span<const T> raw);

    std::vector<std::int32_t> labels_;
    std::int32_t k_ = 0;
};

// A partition of an ordered subset of items: `order` lists distinct item
// indices (insertion order is preserved and meaningful to callers), and
// `assignment` holds their cluster ids in canonical first-occurrence form.
// Equality of subpartitions is by (item set, co-membership); use
// same_subpartition() rather than comparing fields.
class Subpartition {
public:
    Subpartition(std::vector<std::int32_t> order, std::vector<std::int32_t> assignment);

    std::int32_t size() const { return static_cast<std::int32_t>(order_.size()); }
    std::int32_t cluster_count() const { return k_; }
    const std::vector<std::int32_t>& order() const { return order_; }
    const std::vector<std::int32_t>& assignment() const { return assignment_; }
    std::int32_t item(std::int32_t pos) const { return order_[static_cast<std::size_t>(pos)]; }
    std::int32_t cluster_of_pos(std::int32_t pos) const { return assignment_[static_cast<std::size_t>(pos)]; }

    // First item of each cluster, indexed by cluster id - 1.
    std::vector<std::int32_t> representatives() const;

    // Items of cluster id (1-based), in insertion order.
    std::vector<std::int32_t> cluster_members(std::int32_t cluster_id) const;

    // Items sorted ascending followed by the canonical assignment in that
    // sorted order; equal keys identify equal subpartitions.
    std::vector<std::int32_t> canonical_key() const;

private:
    std::vector<std::int32_t> order_;
    std::vector<std::int32_t> assignment_;
    std::int32_t k_ = 0;
};

// Subpartition of `p` induced by `items` (distinct, in range). Co-membership
// is inherited from p; clusters with empty intersection vanish.
Subpartition restrict_to(const Partition& p, std::span<const std::int32_t> items);

// True iff restricting p to s's items reproduces s's co-membership pattern
// (labels are immaterial). This is the membership test for the credible set:
// the partitions consistent with s are exactly those containing s.
bool is_consistent(const Partition& p, const Subpartition& s);

bool same_subpartition(const Subpartition& a, const Subpartition& b);

}  // namespace chips
