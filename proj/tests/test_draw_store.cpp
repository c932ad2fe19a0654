#include <random>

#include "doctest.h"

#include "chips/draw_store.hpp"
#include "chips/error.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using chips::DrawSet;
using chips::Subpartition;
using testgen::Labels;

namespace {

const std::vector<Labels> kThreeDraws{{1, 1, 2}, {1, 1, 1}, {1, 2, 2}};

}  // namespace

TEST_CASE("estimate_probability counts consistent draws") {
    const DrawSet ds = testgen::make_draw_set(kThreeDraws);
    CHECK(chips::estimate_count(ds, testgen::make_sub({0, 1}, {1, 1})) == 2);
    CHECK(chips::estimate_probability(ds, testgen::make_sub({0, 1}, {1, 1})) ==
          doctest::Approx(2.0 / 3.0));
    CHECK(chips::estimate_count(ds, testgen::make_sub({0, 1, 2}, {1, 1, 1})) == 1);

    // A restriction of the only draw is consistent with every copy of it.
    const DrawSet identical = testgen::make_draw_set({{1, 2, 1, 3}, {1, 2, 1, 3}, {1, 2, 1, 3}});
    const Subpartition sub = chips::restrict_to(identical.draw(0), Labels{0, 2, 3});
    CHECK(chips::estimate_probability(identical, sub) == 1.0);
}

TEST_CASE("estimate matches the pairwise oracle on random inputs") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        const auto rows = testgen::noisy_draws(9, 40, 0.3, rng);
        const DrawSet ds = testgen::make_draw_set(rows);
        Labels items;
        for (std::int32_t i = 0; i < 9; ++i)
            if (rng() % 2 == 0) items.push_back(i);
        if (items.empty()) items.push_back(3);
        const Labels assignment = testgen::random_labels(static_cast<std::int32_t>(items.size()),
                                                         3, rng);
        const Subpartition s = testgen::make_sub(items, assignment);
        // The oracle sees canonicalized rows; consistency only reads co-membership.
        std::vector<Labels> canon_rows;
        for (std::int64_t m = 0; m < ds.draw_count(); ++m) canon_rows.push_back(ds.draw(m).labels());
        CHECK(chips::estimate_count(ds, s) ==
              oracle::count(canon_rows, s.order(), s.assignment()));
    }
}

TEST_CASE("extend_mask clears exactly the draws that misplace the new item") {
    const DrawSet ds = testgen::make_draw_set({{1, 1}, {1, 2}});
    const Subpartition seed = testgen::make_sub({0}, {1});
    const chips::ConsistencyMask base = chips::full_mask(ds);
    CHECK(base.count == 2);

    const chips::ConsistencyMask joined = chips::extend_mask(ds, base, seed, 1, 1);
    CHECK(joined.count == 1);
    CHECK(joined.bits == std::vector<std::uint8_t>{1, 0});

    const chips::ConsistencyMask split = chips::extend_mask(ds, base, seed, 1, 2);
    CHECK(split.count == 1);
    CHECK(split.bits == std::vector<std::uint8_t>{0, 1});

    // Identical draws: an extension matching the common draw keeps every bit.
    const DrawSet identical = testgen::make_draw_set({{1, 1, 2}, {1, 1, 2}});
    const chips::ConsistencyMask kept =
        chips::extend_mask(identical, chips::full_mask(identical),
                           testgen::make_sub({0}, {1}), 1, 1);
    CHECK(kept.count == 2);

    CHECK_THROWS_AS(chips::extend_mask(ds, base, seed, 0, 1), chips::Error);
    CHECK_THROWS_AS(chips::extend_mask(ds, base, seed, 1, 3), chips::Error);
    CHECK_THROWS_AS(chips::extend_mask(ds, base, seed, 1, 0), chips::Error);
}

TEST_CASE("extension chains only clear bits and probabilities never increase") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const std::int32_t n = 10;
        const DrawSet ds = testgen::make_draw_set(testgen::noisy_draws(n, 30, 0.25, rng));
        std::vector<std::int32_t> order(static_cast<std::size_t>(n));
        for (std::int32_t i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
        std::shuffle(order.begin(), order.end(), rng);

        Labels items{order[0]};
        Labels assignment{1};
        Subpartition sub = testgen::make_sub(items, assignment);
        chips::ConsistencyMask mask = chips::full_mask(ds);
        std::int64_t previous = mask.count;
        for (std::size_t step = 1; step < order.size(); ++step) {
            const std::int32_t item = order[step];
            const std::int32_t k = sub.cluster_count();
            const auto placement =
                static_cast<std::int32_t>(rng() % static_cast<unsigned>(k + 1)) + 1;
            const chips::ConsistencyMask next = chips::extend_mask(ds, mask, sub, item, placement);
            CHECK(next.count <= previous);
            for (std::size_t b = 0; b < next.bits.size(); ++b)
                CHECK(next.bits[b] <= mask.bits[b]);  // set never grows

            items.push_back(item);
            assignment.push_back(placement);
            sub = testgen::make_sub(items, assignment);
            CHECK(next.count == chips::estimate_count(ds, sub));
            mask = next;
            previous = next.count;
        }
        // Full-length subpartition: probability equals the frequency of the
        // exact partition.
        std::int64_t frequency = 0;
        const chips::Partition target = testgen::make_partition([&] {
            Labels labels(static_cast<std::size_t>(n));
            for (std::size_t pos = 0; pos < items.size(); ++pos)
                labels[static_cast<std::size_t>(items[pos])] = assignment[pos];
            return labels;
        }());
        for (std::int64_t m = 0; m < ds.draw_count(); ++m)
            frequency += (ds.draw(m) == target) ? 1 : 0;
        CHECK(mask.count == frequency);
    }
}

TEST_CASE("estimate depends only on the set partition, not on order or labels") {
    const DrawSet ds = testgen::make_draw_set({{1, 1, 2, 3}, {1, 2, 2, 3}, {1, 1, 1, 2}});
    const Subpartition a = testgen::make_sub({0, 1, 3}, {1, 1, 2});
    const Subpartition b = testgen::make_sub({3, 1, 0}, {1, 2, 2});
    REQUIRE(chips::same_subpartition(a, b));
    CHECK(chips::estimate_count(ds, a) == chips::estimate_count(ds, b));
}

TEST_CASE("cluster probability is the higher-order co-clustering frequency") {
    const DrawSet ds = testgen::make_draw_set(kThreeDraws);
    CHECK(chips::cluster_probability(ds, {0, 1}) == doctest::Approx(2.0 / 3.0));
    CHECK(chips::cluster_probability(ds, {2}) == 1.0);
    CHECK(chips::cluster_probability(ds, {0, 1, 2}) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(chips::cluster_probability(ds, {}), chips::Error);
}

TEST_CASE("cluster probability dominates any subpartition keeping the items together") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        const std::int32_t n = 8;
        const DrawSet ds = testgen::make_draw_set(testgen::noisy_draws(n, 25, 0.3, rng));
        const chips::Partition p = ds.draw(static_cast<std::int64_t>(rng() % 25));
        Labels items;
        for (std::int32_t i = 0; i < n; ++i)
            if (rng() % 2 == 0) items.push_back(i);
        if (items.size() < 2) items = {0, 1};
        const Subpartition s = chips::restrict_to(p, items);
        for (std::int32_t c = 1; c <= s.cluster_count(); ++c) {
            const Labels members = s.cluster_members(c);
            CHECK(chips::cluster_count(ds, members) >= chips::estimate_count(ds, s));
        }
    }
}

TEST_CASE("extension_counts agrees with one-at-a-time extend_mask") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        const std::int32_t n = 9;
        const DrawSet ds = testgen::make_draw_set(testgen::noisy_draws(n, 30, 0.35, rng));
        const chips::Partition p = ds.draw(0);
        Labels items{0, 1, 2, 3};
        const Subpartition sub = chips::restrict_to(p, items);
        const chips::ConsistencyMask mask = chips::mask_for(ds, sub);
        const std::int32_t item = 5;
        const std::vector<std::int64_t> counts =
            chips::extension_counts(ds, mask, sub.representatives(), item);
        REQUIRE(counts.size() == static_cast<std::size_t>(sub.cluster_count()) + 1);
        for (std::int32_t t = 1; t <= sub.cluster_count() + 1; ++t) {
            const chips::ConsistencyMask extended = chips::extend_mask(ds, mask, sub, item, t);
            CHECK(counts[static_cast<std::size_t>(t - 1)] == extended.count);
        }
    }
}

TEST_CASE("draw sets validate their inputs") {
    CHECK_THROWS_AS(DrawSet::from_labels({}), chips::Error);
    CHECK_THROWS_AS(DrawSet::from_labels({{1, 2}, {1, 2, 3}}), chips::Error);
    const DrawSet ds = testgen::make_draw_set({{4, 4, 9}});
    CHECK(ds.draw(0).labels() == Labels{1, 1, 2});  // canonicalized on ingestion
}
