#include "chips/draw_store.hpp"

#include <algorithm>
#include <span>

#include "chips/error.hpp"
#include "chips/kernels.hpp"

namespace chips {

namespace {

constexpr const char* kComponent = "draw-store";

}  // namespace

DrawSet DrawSet::from_partitions(std::vector<Partition> draws) {
    if (draws.empty()) throw_input(kComponent, "draw set must contain at least one draw");
    DrawSet ds;
    ds.n_ = draws.front().size();
    ds.m_ = static_cast<std::int64_t>(draws.size());
    ds.rows_.reserve(static_cast<std::size_t>(ds.m_) * static_cast<std::size_t>(ds.n_));
    for (const Partition& p : draws) {
        if (p.size() != ds.n_)
            throw_input(kComponent, "all draws must cover the same number of items");
        ds.rows_.insert(ds.rows_.end(), p.labels().begin(), p.labels().end());
    }
    ds.cols_.resize(ds.rows_.size());
    for (std::int64_t m = 0; m < ds.m_; ++m) {
        const std::int32_t* r = ds.row(m);
        for (std::int32_t i = 0; i < ds.n_; ++i)
            ds.cols_[static_cast<std::size_t>(i) * static_cast<std::size_t>(ds.m_) +
                     static_cast<std::size_t>(m)] = r[i];
    }
    return ds;
}

DrawSet DrawSet::from_labels(const std::vector<std::vector<std::int32_t>>& rows) {
    std::vector<Partition> draws;
    draws.reserve(rows.size());
    for (const auto& r : rows) draws.push_back(Partition::canonicalize(std::span(r)));
    return from_partitions(std::move(draws));
}

Partition DrawSet::draw(std::int64_t m) const {
    return Partition::canonicalize(
        std::span<const std::int32_t>(row(m), static_cast<std::size_t>(n_)));
}

ConsistencyMask full_mask(const DrawSet& ds) {
    ConsistencyMask mask;
    mask.bits.assign(static_cast<std::size_t>(ds.draw_count()), 1);
    mask.count = ds.draw_count();
    return mask;
}

namespace {

// Row-level consistency check against (order, assignment), written directly
// over the raw label row so it stays independent of both Partition and the
// kernel path. rep_label is caller-provided scratch of size >= k.
bool row_consistent(const std::int32_t* row, const Subpartition& s,
                    std::vector<std::int32_t>& rep_label) {
    const std::int32_t k = s.cluster_count();
    std::fill(rep_label.begin(), rep_label.begin() + k, -1);
    for (std::int32_t pos = 0; pos < s.size(); ++pos) {
        const std::int32_t label = row[s.item(pos)];
        const std::int32_t c = s.cluster_of_pos(pos) - 1;
        if (rep_label[static_cast<std::size_t>(c)] < 0)
            rep_label[static_cast<std::size_t>(c)] = label;
        else if (rep_label[static_cast<std::size_t>(c)] != label)
            return false;
    }
    for (std::int32_t a = 0; a < k; ++a)
        for (std::int32_t b = a + 1; b < k; ++b)
            if (rep_label[static_cast<std::size_t>(a)] == rep_label[static_cast<std::size_t>(b)])
                return false;
    return true;
}

void check_items_in_range(const DrawSet& ds, const Subpartition& s) {
    for (std::int32_t pos = 0; pos < s.size(); ++pos) {
        const std::int32_t item = s.item(pos);
        if (item < 0 || item >= ds.item_count())
            throw_input(kComponent, "subpartition item outside the draw set's range");
    }
}

}  // namespace

ConsistencyMask mask_for(const DrawSet& ds, const Subpartition& s) {
    check_items_in_range(ds, s);
    ConsistencyMask mask;
    mask.bits.assign(static_cast<std::size_t>(ds.draw_count()), 0);
    std::vector<std::int32_t> scratch(static_cast<std::size_t>(s.cluster_count()));
    for (std::int64_t m = 0; m < ds.draw_count(); ++m) {
        if (row_consistent(ds.row(m), s, scratch)) {
            mask.bits[static_cast<std::size_t>(m)] = 1;
            ++mask.count;
        }
    }
    return mask;
}

std::int64_t estimate_count(const DrawSet& ds, const Subpartition& s) {
    check_items_in_range(ds, s);
    std::vector<std::int32_t> scratch(static_cast<std::size_t>(s.cluster_count()));
    std::int64_t count = 0;
    for (std::int64_t m = 0; m < ds.draw_count(); ++m)
        count += row_consistent(ds.row(m), s, scratch) ? 1 : 0;
    return count;
}

double estimate_probability(const DrawSet& ds, const Subpartition& s) {
    return static_cast<double>(estimate_count(ds, s)) / static_cast<double>(ds.draw_count());
}

ConsistencyMask extend_mask(const DrawSet& ds, const ConsistencyMask& mask, const Subpartition& s,
                            std::int32_t new_item, std::int32_t placement) {
    if (new_item < 0 || new_item >= ds.item_count())
        throw_input(kComponent, "extension item outside the draw set's range");
    for (std::int32_t pos = 0; pos < s.size(); ++pos)
        if (s.item(pos) == new_item)
            throw_input(kComponent, "extension item is already part of the subpartition");
    const std::int32_t k = s.cluster_count();
    if (placement < 1 || placement > k + 1)
        throw_input(kComponent, "placement must be an existing cluster or the next singleton");
    if (mask.bits.size() != static_cast<std::size_t>(ds.draw_count()))
        throw_input(kComponent, "mask length does not match the draw count");

    const auto& kernels = kern::active_kernels();
    const std::vector<std::int32_t> reps = s.representatives();
    ConsistencyMask out = mask;
    const std::int32_t* item_col = ds.column(new_item);
    const std::size_t m = out.bits.size();
    if (placement <= k) {
        out.count = kernels.mask_and_eq(out.bits.data(), item_col,
                                        ds.column(reps[static_cast<std::size_t>(placement - 1)]), m);
    } else {
        for (std::int32_t rep : reps)
            out.count = kernels.mask_and_ne(out.bits.data(), item_col, ds.column(rep), m);
    }
    return out;
}

std::vector<std::int64_t> extension_counts(const DrawSet& ds, const ConsistencyMask& mask,
                                           const std::vector<std::int32_t>& representatives,
                                           std::int32_t item) {
    const auto& kernels = kern::active_kernels();
    const std::int32_t* item_col = ds.column(item);
    const std::size_t m = mask.bits.size();
    std::vector<std::int64_t> counts(representatives.size() + 1, 0);
    std::int64_t joined = 0;
    for (std::size_t t = 0; t < representatives.size(); ++t) {
        counts[t] = kernels.count_masked_eq(mask.bits.data(), item_col,
                                            ds.column(representatives[t]), m);
        joined += counts[t];
    }
    // In a surviving draw the item matches at most one representative, so the
    // join counts partition the non-singleton outcomes.
    counts[representatives.size()] = mask.count - joined;
    return counts;
}

std::int64_t cluster_count(const DrawSet& ds, const std::vector<std::int32_t>& items) {
    if (items.empty()) throw_input(kComponent, "cluster probability needs a nonempty item set");
    for (std::int32_t item : items)
        if (item < 0 || item >= ds.item_count())
            throw_input(kComponent, "item index out of range");
    if (items.size() == 1) return ds.draw_count();
    const auto& kernels = kern::active_kernels();
    ConsistencyMask mask = full_mask(ds);
    const std::int32_t* first_col = ds.column(items.front());
    for (std::size_t j = 1; j < items.size(); ++j)
        mask.count = kernels.mask_and_eq(mask.bits.data(), ds.column(items[j]), first_col,
                                         mask.bits.size());
    return mask.count;
}

double cluster_probability(const DrawSet& ds, const std::vector<std::int32_t>& items) {
    return static_cast<double>(cluster_count(ds, items)) / static_cast<double>(ds.draw_count());
}

}  // namespace chips
