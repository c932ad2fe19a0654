#include <random>

#include "doctest.h"

#include "chips/error.hpp"
#include "chips/infer.hpp"
#include "generators.hpp"

using chips::ClusterCredibleRegion;
using chips::DrawSet;
using chips::ParamTable;
using testgen::Labels;

namespace {

chips::ChipsRegion make_region(const DrawSet& ds, const chips::Subpartition& sub, double gamma) {
    const std::int64_t count = chips::estimate_count(ds, sub);
    return chips::ChipsRegion{sub,
                              sub.size(),
                              gamma,
                              count,
                              ds.draw_count(),
                              static_cast<double>(count) / static_cast<double>(ds.draw_count()),
                              0};
}

}  // namespace

TEST_CASE("param table enforces its key and dimension invariants") {
    ParamTable table(3);
    table.insert(0, 1, {0.5, 0.5});
    CHECK_THROWS_AS(table.insert(0, 1, {0.1, 0.2}), chips::Error);  // duplicate key
    CHECK_THROWS_AS(table.insert(1, 1, {0.1}), chips::Error);       // dimension change
    CHECK_THROWS_AS(table.insert(3, 1, {0.1, 0.2}), chips::Error);  // draw out of range
    CHECK(table.dim() == 2);
    CHECK(table.find(0, 1) != nullptr);
    CHECK(table.find(0, 2) == nullptr);
}

TEST_CASE("conditional samples pool the matched cluster of every consistent draw") {
    const DrawSet ds = testgen::make_draw_set({{1, 1, 2}, {1, 1, 1}, {1, 2, 2}});
    ParamTable params(3);
    // Distinct values per (draw, cluster) expose which entry gets picked.
    params.insert(0, 1, {10.0});
    params.insert(0, 2, {20.0});
    params.insert(1, 1, {30.0});
    params.insert(2, 1, {40.0});
    params.insert(2, 2, {50.0});

    const auto region = make_region(ds, testgen::make_sub({0, 1}, {1, 1}), 0.5);
    REQUIRE(region.count == 2);  // the third draw separates items 0 and 1

    const auto samples = chips::conditional_samples(ds, params, region, 1);
    REQUIRE(samples.size() == 2);
    CHECK(samples[0] == std::vector<double>{10.0});
    // Draw 2 merges everything into one cluster: the containing cluster is a
    // strict superset of the subpartition cluster, and its parameter is used.
    CHECK(samples[1] == std::vector<double>{30.0});
}

TEST_CASE("constant parameters yield constant samples") {
    const std::vector<Labels> rows(4, Labels{1, 1, 2});
    const DrawSet ds = testgen::make_draw_set(rows);
    ParamTable params(4);
    for (std::int64_t m = 0; m < 4; ++m) {
        params.insert(m, 1, {0.0, 0.0});
        params.insert(m, 2, {5.0, 5.0});
    }
    const auto region = make_region(ds, testgen::make_sub({0, 1}, {1, 1}), 0.5);
    const auto samples = chips::conditional_samples(ds, params, region, 1);
    REQUIRE(samples.size() == 4);  // length / M = region probability exactly
    for (const auto& s : samples) CHECK(s == std::vector<double>{0.0, 0.0});
}

TEST_CASE("conditional samples reject gaps and impossible regions") {
    const DrawSet ds = testgen::make_draw_set({{1, 1}, {1, 1}});
    ParamTable sparse(2);
    sparse.insert(0, 1, {1.0});  // the second consistent draw has no entry
    const auto region = make_region(ds, testgen::make_sub({0, 1}, {1, 1}), 0.4);
    CHECK_THROWS_AS(chips::conditional_samples(ds, sparse, region, 1), chips::Error);
    CHECK_THROWS_AS(chips::conditional_samples(ds, sparse, region, 2), chips::Error);

    // No draw separates item 0 from itself; build a subpartition nothing matches.
    const DrawSet merged = testgen::make_draw_set({{1, 1}, {1, 1}});
    ParamTable params(2);
    params.insert(0, 1, {1.0});
    params.insert(1, 1, {1.0});
    const auto impossible = make_region(merged, testgen::make_sub({0, 1}, {1, 2}), 0.4);
    CHECK(impossible.count == 0);
    CHECK_THROWS_AS(chips::conditional_samples(merged, params, impossible, 1), chips::Error);
}

TEST_CASE("two-sample interval at full credibility spans the order statistics") {
    const ClusterCredibleRegion region =
        chips::credible_region({{1.0}, {3.0}}, 1.0, 0.9);
    CHECK(region.lower == std::vector<double>{1.0});
    CHECK(region.upper == std::vector<double>{3.0});
    CHECK(region.joint_bound == doctest::Approx(0.9));
}

TEST_CASE("constant samples produce a degenerate but reported region") {
    const std::vector<std::vector<double>> samples(5, std::vector<double>{0.0, 0.0});
    const ClusterCredibleRegion region = chips::credible_region(samples, 0.95, 0.8);
    CHECK(region.lower == std::vector<double>{0.0, 0.0});
    CHECK(region.upper == std::vector<double>{0.0, 0.0});
    CHECK(region.joint_bound == doctest::Approx(0.95 * 0.8));
    CHECK(region.degenerate);
}

TEST_CASE("empirical regions cover at least alpha of the samples") {
    std::mt19937 rng(89);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (const double alpha : {0.5, 0.8, 0.95}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<std::vector<double>> samples;
            const std::size_t count = 40 + rng() % 60;
            for (std::size_t s = 0; s < count; ++s)
                samples.push_back({noise(rng), 0.5 * noise(rng) + 1.0});
            const ClusterCredibleRegion region = chips::credible_region(samples, alpha, 0.9);
            REQUIRE_FALSE(region.degenerate);

            // Interval coverage is a per-coordinate guarantee.
            for (std::size_t j = 0; j < 2; ++j) {
                std::size_t inside = 0;
                for (const auto& s : samples)
                    inside += (s[j] >= region.lower[j] && s[j] <= region.upper[j]) ? 1 : 0;
                CHECK(static_cast<double>(inside) >= alpha * static_cast<double>(count));
            }
            std::size_t inside_ellipsoid = 0;
            for (const auto& s : samples)
                inside_ellipsoid += chips::ellipsoid_contains(region, s) ? 1 : 0;
            CHECK(static_cast<double>(inside_ellipsoid) >= alpha * static_cast<double>(count));
        }
    }
}

TEST_CASE("credible_region validates its inputs") {
    CHECK_THROWS_AS(chips::credible_region({{1.0}}, 0.9, 0.5), chips::Error);
    CHECK_THROWS_AS(chips::credible_region({{1.0}, {2.0}}, 0.0, 0.5), chips::Error);
    CHECK_THROWS_AS(chips::credible_region({{1.0}, {2.0}}, 1.5, 0.5), chips::Error);
    CHECK_THROWS_AS(chips::credible_region({{1.0}, {2.0, 3.0}}, 0.9, 0.5), chips::Error);
}

TEST_CASE("the ellipsoid contains its center and excludes far points") {
    std::mt19937 rng(97);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<std::vector<double>> samples;
    for (int s = 0; s < 100; ++s) samples.push_back({noise(rng), noise(rng)});
    const ClusterCredibleRegion region = chips::credible_region(samples, 0.9, 0.9);
    CHECK(chips::ellipsoid_contains(region, region.center));
    CHECK_FALSE(chips::ellipsoid_contains(region, {100.0, 100.0}));
}
