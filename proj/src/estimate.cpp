#include "chips/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "chips/error.hpp"
#include "chips/kernels.hpp"
#include "chips/parallel.hpp"
#include "chips/rng.hpp"

namespace chips {

namespace {

constexpr const char* kComponent = "estimate";
constexpr std::int32_t kMaxSweeps = 50;
constexpr double kViImprovementEps = 1e-12;

std::vector<double> make_xlogx(std::size_t up_to) {
    std::vector<double> table(up_to + 1, 0.0);
    for (std::size_t x = 1; x <= up_to; ++x)
        table[x] = static_cast<double>(x) * std::log(static_cast<double>(x));
    return table;
}

}  // namespace

CoclusterCounts CoclusterCounts::compute(const DrawSet& ds, unsigned threads) {
    CoclusterCounts cc;
    cc.n_ = ds.item_count();
    cc.m_ = ds.draw_count();
    const auto n = static_cast<std::size_t>(cc.n_);
    cc.counts_.assign(n * n, 0);
    const auto& kernels = kern::active_kernels();
    parallel_for(n, threads, [&](std::size_t i) {
        cc.counts_[i * n + i] = cc.m_;
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::int64_t c =
                kernels.count_eq(ds.column(static_cast<std::int32_t>(i)),
                                 ds.column(static_cast<std::int32_t>(j)),
                                 static_cast<std::size_t>(cc.m_));
            cc.counts_[i * n + j] = c;
        }
    });
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) cc.counts_[i * n + j] = cc.counts_[j * n + i];
    return cc;
}

std::int64_t binder_objective(const CoclusterCounts& counts, const Partition& candidate) {
    if (candidate.size() != counts.item_count())
        throw_input(kComponent, "candidate and draw set cover different item counts");
    const std::int32_t n = candidate.size();
    const std::int64_t m = counts.draw_count();
    std::int64_t objective = 0;
    for (std::int32_t i = 0; i < n; ++i)
        for (std::int32_t j = i + 1; j < n; ++j)
            if (candidate.label_of(i) == candidate.label_of(j))
                objective += m - 2 * counts.count(i, j);
    return objective;
}

double variation_of_information(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) throw_input(kComponent, "partitions cover different item counts");
    const std::int32_t n = a.size();
    const std::int32_t ka = a.cluster_count();
    const std::int32_t kb = b.cluster_count();
    std::vector<std::int32_t> sizes_a(static_cast<std::size_t>(ka), 0);
    std::vector<std::int32_t> sizes_b(static_cast<std::size_t>(kb), 0);
    std::vector<std::int32_t> joint(static_cast<std::size_t>(ka) * static_cast<std::size_t>(kb), 0);
    for (std::int32_t i = 0; i < n; ++i) {
        const std::int32_t ca = a.label_of(i) - 1;
        const std::int32_t cb = b.label_of(i) - 1;
        ++sizes_a[static_cast<std::size_t>(ca)];
        ++sizes_b[static_cast<std::size_t>(cb)];
        ++joint[static_cast<std::size_t>(ca) * static_cast<std::size_t>(kb) +
                static_cast<std::size_t>(cb)];
    }
    // VI = (sum_c n_c ln n_c + sum_d m_d ln m_d - 2 sum_cd n_cd ln n_cd) / n.
    const std::vector<double> xlogx = make_xlogx(static_cast<std::size_t>(n));
    double acc = 0.0;
    for (std::int32_t c : sizes_a) acc += xlogx[static_cast<std::size_t>(c)];
    for (std::int32_t d : sizes_b) acc += xlogx[static_cast<std::size_t>(d)];
    for (std::int32_t cd : joint) acc -= 2.0 * xlogx[static_cast<std::size_t>(cd)];
    return acc / static_cast<double>(n);
}

double expected_loss(const DrawSet& ds, const Partition& candidate, Loss loss) {
    if (candidate.size() != ds.item_count())
        throw_input(kComponent, "candidate and draw set cover different item counts");
    if (loss == Loss::binder) {
        const CoclusterCounts counts = CoclusterCounts::compute(ds);
        const std::int32_t n = candidate.size();
        std::int64_t all_pairs = 0;
        for (std::int32_t i = 0; i < n; ++i)
            for (std::int32_t j = i + 1; j < n; ++j) all_pairs += counts.count(i, j);
        const std::int64_t objective = binder_objective(counts, candidate);
        return static_cast<double>(objective + all_pairs) / static_cast<double>(ds.draw_count());
    }
    double total = 0.0;
    for (std::int64_t m = 0; m < ds.draw_count(); ++m)
        total += variation_of_information(candidate, ds.draw(m));
    return total / static_cast<double>(ds.draw_count());
}

namespace {

// Working state of one completion restart. Cluster ids are slot indices + 1;
// slots may become empty during sweeps and are then reused for singletons.
struct CompletionState {
    const DrawSet& ds;
    Loss loss;
    const CoclusterCounts* cocluster;       // binder
    std::vector<double> xlogx;              // vi
    std::vector<std::size_t> draw_offsets;  // vi: prefix sums of per-draw cluster counts
    std::size_t cell_stride = 0;            // vi: total cells per candidate cluster

    std::vector<std::int32_t> assign;               // 0 = unassigned
    std::vector<std::vector<std::int32_t>> members;  // per cluster slot
    std::vector<std::vector<std::uint16_t>> cells;   // vi: per cluster slot

    CompletionState(const DrawSet& ds_, Loss loss_, const CoclusterCounts* cc)
        : ds(ds_), loss(loss_), cocluster(cc) {
        assign.assign(static_cast<std::size_t>(ds.item_count()), 0);
        if (loss == Loss::vi) {
            xlogx = make_xlogx(static_cast<std::size_t>(ds.item_count()) + 1);
            draw_offsets.resize(static_cast<std::size_t>(ds.draw_count()) + 1, 0);
            for (std::int64_t m = 0; m < ds.draw_count(); ++m) {
                const std::int32_t* row = ds.row(m);
                std::int32_t k = 0;
                for (std::int32_t i = 0; i < ds.item_count(); ++i) k = std::max(k, row[i]);
                draw_offsets[static_cast<std::size_t>(m) + 1] =
                    draw_offsets[static_cast<std::size_t>(m)] + static_cast<std::size_t>(k);
            }
            cell_stride = draw_offsets.back();
        }
    }

    std::int32_t append_slot() {
        members.emplace_back();
        if (loss == Loss::vi) cells.emplace_back(cell_stride, 0);
        return static_cast<std::int32_t>(members.size());
    }

    std::int32_t ensure_empty_slot() {
        for (std::size_t c = 0; c < members.size(); ++c)
            if (members[c].empty()) return static_cast<std::int32_t>(c) + 1;
        return append_slot();
    }

    // Cost change of adding item into cluster slot (relative; singleton = 0).
    double add_delta(std::int32_t item, std::int32_t cluster_id) const {
        const auto c = static_cast<std::size_t>(cluster_id - 1);
        if (loss == Loss::binder) {
            std::int64_t d = 0;
            for (std::int32_t j : members[c])
                d += ds.draw_count() - 2 * cocluster->count(item, j);
            return static_cast<double>(d);
        }
        const std::size_t s = members[c].size();
        double delta = xlogx[s + 1] - xlogx[s];
        const std::int32_t* col = ds.column(item);
        const std::vector<std::uint16_t>& cell = cells[c];
        double db = 0.0;
        for (std::int64_t m = 0; m < ds.draw_count(); ++m) {
            const std::size_t x =
                cell[draw_offsets[static_cast<std::size_t>(m)] +
                     static_cast<std::size_t>(col[m] - 1)];
            db += xlogx[x + 1] - xlogx[x];
        }
        return delta - 2.0 * db / static_cast<double>(ds.draw_count());
    }

    double remove_delta(std::int32_t item, std::int32_t cluster_id) const {
        const auto c = static_cast<std::size_t>(cluster_id - 1);
        if (loss == Loss::binder) {
            std::int64_t d = 0;
            for (std::int32_t j : members[c])
                if (j != item) d += ds.draw_count() - 2 * cocluster->count(item, j);
            return -static_cast<double>(d);
        }
        const std::size_t s = members[c].size();
        double delta = xlogx[s - 1] - xlogx[s];
        const std::int32_t* col = ds.column(item);
        const std::vector<std::uint16_t>& cell = cells[c];
        double db = 0.0;
        for (std::int64_t m = 0; m < ds.draw_count(); ++m) {
            const std::size_t x =
                cell[draw_offsets[static_cast<std::size_t>(m)] +
                     static_cast<std::size_t>(col[m] - 1)];
            db += xlogx[x - 1] - xlogx[x];
        }
        return delta - 2.0 * db / static_cast<double>(ds.draw_count());
    }

    void add(std::int32_t item, std::int32_t cluster_id) {
        const auto c = static_cast<std::size_t>(cluster_id - 1);
        members[c].push_back(item);
        assign[static_cast<std::size_t>(item)] = cluster_id;
        if (loss == Loss::vi) {
            const std::int32_t* col = ds.column(item);
            std::vector<std::uint16_t>& cell = cells[c];
            for (std::int64_t m = 0; m < ds.draw_count(); ++m)
                ++cell[draw_offsets[static_cast<std::size_t>(m)] +
                       static_cast<std::size_t>(col[m] - 1)];
        }
    }

    void remove(std::int32_t item, std::int32_t cluster_id) {
        const auto c = static_cast<std::size_t>(cluster_id - 1);
        auto& mem = members[c];
        mem.erase(std::find(mem.begin(), mem.end(), item));
        assign[static_cast<std::size_t>(item)] = 0;
        if (loss == Loss::vi) {
            const std::int32_t* col = ds.column(item);
            std::vector<std::uint16_t>& cell = cells[c];
            for (std::int64_t m = 0; m < ds.draw_count(); ++m)
                --cell[draw_offsets[static_cast<std::size_t>(m)] +
                       static_cast<std::size_t>(col[m] - 1)];
        }
    }

    bool improvement(double delta) const {
        if (loss == Loss::binder) return delta < -0.5;  // integer-valued deltas
        return delta < -kViImprovementEps;
    }
};

}  // namespace

Partition complete_partition(const DrawSet& ds, const ChipsRegion& region, Loss loss,
                             std::int32_t restarts, std::uint64_t seed) {
    if (restarts < 1) throw_input(kComponent, "at least one restart is required");
    if (region.draw_count != ds.draw_count())
        throw_input(kComponent, "region was not produced from this draw set");
    const std::int32_t n = ds.item_count();
    const Subpartition& sub = region.subpartition;

    std::vector<std::int32_t> core_assign(static_cast<std::size_t>(n), 0);
    for (std::int32_t pos = 0; pos < sub.size(); ++pos) {
        const std::int32_t item = sub.item(pos);
        if (item < 0 || item >= n)
            throw_input(kComponent, "region subpartition item outside the draw set");
        core_assign[static_cast<std::size_t>(item)] = sub.cluster_of_pos(pos);
    }
    std::vector<std::int32_t> free_items;
    for (std::int32_t i = 0; i < n; ++i)
        if (core_assign[static_cast<std::size_t>(i)] == 0) free_items.push_back(i);

    if (free_items.empty()) return Partition::canonicalize(std::span(core_assign));

    CoclusterCounts cocluster;
    if (loss == Loss::binder) cocluster = CoclusterCounts::compute(ds);

    std::vector<std::int32_t> best_labels;
    double best_score = 0.0;
    std::int64_t best_objective = 0;
    bool have_best = false;

    for (std::int32_t r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, SeedStream::completion, static_cast<std::uint64_t>(r)));
        std::vector<std::int32_t> order = free_items;
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[static_cast<std::size_t>(rng.uniform_below(i))]);

        CompletionState state(ds, loss, loss == Loss::binder ? &cocluster : nullptr);
        for (std::int32_t c = 1; c <= sub.cluster_count(); ++c) state.append_slot();
        for (std::int32_t pos = 0; pos < sub.size(); ++pos)
            state.add(sub.item(pos), sub.cluster_of_pos(pos));

        // Sequential allocation: each free item goes to the placement with
        // the lowest cost change; a fresh singleton costs zero by convention.
        for (std::int32_t item : order) {
            std::int32_t best_cluster = 0;  // 0 = new singleton
            double best_delta = 0.0;
            for (std::size_t c = 0; c < state.members.size(); ++c) {
                if (state.members[c].empty()) continue;
                const double delta = state.add_delta(item, static_cast<std::int32_t>(c) + 1);
                if (delta < best_delta) {
                    best_delta = delta;
                    best_cluster = static_cast<std::int32_t>(c) + 1;
                }
            }
            if (best_cluster == 0) best_cluster = state.ensure_empty_slot();
            state.add(item, best_cluster);
        }

        // Sweeps: reassign one free item at a time while any move lowers the
        // objective. Core items stay put.
        for (std::int32_t pass = 0; pass < kMaxSweeps; ++pass) {
            bool moved = false;
            for (std::int32_t item : free_items) {
                const std::int32_t from = state.assign[static_cast<std::size_t>(item)];
                const double out_delta = state.remove_delta(item, from);
                std::int32_t target = from;
                double best_delta = 0.0;
                for (std::size_t c = 0; c < state.members.size(); ++c) {
                    const auto cid = static_cast<std::int32_t>(c) + 1;
                    if (cid == from || state.members[c].empty()) continue;
                    const double delta = out_delta + state.add_delta(item, cid);
                    if (state.improvement(delta) && delta < best_delta) {
                        best_delta = delta;
                        target = cid;
                    }
                }
                // Moving out into a fresh singleton costs out_delta alone.
                if (state.members[static_cast<std::size_t>(from - 1)].size() > 1 &&
                    state.improvement(out_delta) && out_delta < best_delta) {
                    best_delta = out_delta;
                    target = 0;
                }
                if (target != from) {
                    state.remove(item, from);
                    if (target == 0) target = state.ensure_empty_slot();
                    state.add(item, target);
                    moved = true;
                }
            }
            if (!moved) break;
        }

        const Partition candidate = Partition::canonicalize(std::span(state.assign));
        if (loss == Loss::binder) {
            const std::int64_t objective = binder_objective(cocluster, candidate);
            if (!have_best || objective < best_objective) {
                best_objective = objective;
                best_labels = candidate.labels();
                have_best = true;
            }
        } else {
            const double score = expected_loss(ds, candidate, Loss::vi);
            if (!have_best || score < best_score) {
                best_score = score;
                best_labels = candidate.labels();
                have_best = true;
            }
        }
    }

    return Partition::canonicalize(std::span(best_labels));
}

}  // namespace chips
