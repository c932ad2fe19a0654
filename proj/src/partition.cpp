#include "chips/partition.hpp"

#include <algorithm>
#include <unordered_map>

#include "chips/error.hpp"

namespace chips {

namespace {

constexpr const char* kComponent = "partition-core";

}  // namespace

template <typename T>
Partition Partition::canonicalize_impl(std::span<const T> raw) {
    if (raw.empty()) throw_input(kComponent, "cannot canonicalize an empty label sequence");
    Partition p;
    p.labels_.resize(raw.size());
    std::unordered_map<T, std::int32_t> seen;
    seen.reserve(raw.size());
    std::int32_t next = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto [it, inserted] = seen.emplace(raw[i], next + 1);
        if (inserted) ++next;
        p.labels_[i] = it->second;
    }
    p.k_ = next;
    return p;
}

Partition Partition::canonicalize(std::span<const std::int32_t> raw_labels) {
    return canonicalize_impl<std::int32_t>(raw_labels);
}

Partition Partition::canonicalize(std::span<const std::int64_t> raw_labels) {
    return canonicalize_impl<std::int64_t>(raw_labels);
}

Subpartition::Subpartition(std::vector<std::int32_t> order, std::vector<std::int32_t> assignment)
    : order_(std::move(order)), assignment_(std::move(assignment)) {
    if (order_.empty()) throw_input(kComponent, "subpartition must contain at least one item");
    if (order_.size() != assignment_.size())
        throw_input(kComponent, "subpartition order and assignment lengths differ");
    std::vector<std::int32_t> sorted = order_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw_input(kComponent, "subpartition items must be distinct");
    if (sorted.front() < 0) throw_input(kComponent, "negative item index in subpartition");
    // Canonical assignment: first position has id 1, ids contiguous.
    std::int32_t max_seen = 0;
    for (std::int32_t id : assignment_) {
        if (id < 1 || id > max_seen + 1)
            throw_input(kComponent, "subpartition assignment is not in canonical first-occurrence form");
        max_seen = std::max(max_seen, id);
    }
    k_ = max_seen;
}

std::vector<std::int32_t> Subpartition::representatives() const {
    std::vector<std::int32_t> reps(static_cast<std::size_t>(k_), -1);
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
        auto c = static_cast<std::size_t>(assignment_[pos] - 1);
        if (reps[c] < 0) reps[c] = order_[pos];
    }
    return reps;
}

std::vector<std::int32_t> Subpartition::cluster_members(std::int32_t cluster_id) const {
    std::vector<std::int32_t> members;
    for (std::size_t pos = 0; pos < order_.size(); ++pos)
        if (assignment_[pos] == cluster_id) members.push_back(order_[pos]);
    return members;
}

std::vector<std::int32_t> Subpartition::canonical_key() const {
    std::vector<std::size_t> perm(order_.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return order_[a] < order_[b]; });
    std::vector<std::int32_t> key;
    key.reserve(2 * order_.size());
    for (std::size_t i : perm) key.push_back(order_[i]);
    // Relabel in sorted-item order so the key is label-free.
    std::vector<std::int32_t> remap(static_cast<std::size_t>(k_) + 1, 0);
    std::int32_t next = 0;
    for (std::size_t i : perm) {
        auto c = static_cast<std::size_t>(assignment_[i]);
        if (remap[c] == 0) remap[c] = ++next;
        key.push_back(remap[c]);
    }
    return key;
}

Subpartition restrict_to(const Partition& p, std::span<const std::int32_t> items) {
    if (items.empty()) throw_input(kComponent, "cannot restrict to an empty item set");
    const std::int32_t n = p.size();
    std::vector<std::int32_t> assignment;
    assignment.reserve(items.size());
    std::vector<std::int32_t> remap(static_cast<std::size_t>(p.cluster_count()) + 1, 0);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::int32_t next = 0;
    for (std::int32_t item : items) {
        if (item < 0 || item >= n) throw_input(kComponent, "item index out of range in restriction");
        if (used[static_cast<std::size_t>(item)])
            throw_input(kComponent, "duplicate item index in restriction");
        used[static_cast<std::size_t>(item)] = true;
        auto c = static_cast<std::size_t>(p.label_of(item));
        if (remap[c] == 0) remap[c] = ++next;
        assignment.push_back(remap[c]);
    }
    return Subpartition(std::vector<std::int32_t>(items.begin(), items.end()), std::move(assignment));
}

bool is_consistent(const Partition& p, const Subpartition& s) {
    // p contains s iff (a) items sharing a cluster in s share a label in p
    // and (b) distinct clusters of s have distinct labels in p. Checking each
    // item against its cluster's first member covers (a); (b) is a pairwise
    // check over the k representative labels.
    const std::int32_t k = s.cluster_count();
    std::vector<std::int32_t> rep_label(static_cast<std::size_t>(k), -1);
    for (std::int32_t pos = 0; pos < s.size(); ++pos) {
        const std::int32_t item = s.item(pos);
        if (item < 0 || item >= p.size())
            throw_input(kComponent, "subpartition item outside the partition's range");
        const std::int32_t label = p.label_of(item);
        auto c = static_cast<std::size_t>(s.cluster_of_pos(pos) - 1);
        if (rep_label[c] < 0) {
            rep_label[c] = label;
        } else if (rep_label[c] != label) {
            return false;
        }
    }
    for (std::size_t a = 0; a < rep_label.size(); ++a)
        for (std::size_t b = a + 1; b < rep_label.size(); ++b)
            if (rep_label[a] == rep_label[b]) return false;
    return true;
}

bool same_subpartition(const Subpartition& a, const Subpartition& b) {
    return a.canonical_key() == b.canonical_key();
}

}  // namespace chips
