#include "chips/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chips/error.hpp"
#include "chips/rng.hpp"

namespace chips {

namespace {

constexpr const char* kComponent = "synth";

void validate(const MixtureSpec& spec) {
    if (spec.means.empty()) throw_input(kComponent, "mixture needs at least one component");
    if (!(spec.sigma2 > 0.0)) throw_input(kComponent, "sigma2 must be positive");
    if (spec.weights.size() != spec.means.size())
        throw_input(kComponent, "weights and means must have equal length");
    double total = 0.0;
    for (double w : spec.weights) {
        if (w < 0.0) throw_input(kComponent, "weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw_input(kComponent, "weights must sum to 1");
    const std::size_t dim = spec.means.front().size();
    if (dim == 0) throw_input(kComponent, "component means must be non-empty vectors");
    for (const auto& mu : spec.means)
        if (mu.size() != dim) throw_input(kComponent, "component means must share one dimension");
    for (const auto& x : spec.extra_points)
        if (x.size() != dim) throw_input(kComponent, "extra points must match the mean dimension");
    if (spec.per_component < 0) throw_input(kComponent, "per-component count must be nonnegative");
    if (spec.per_component == 0 && spec.extra_points.empty())
        throw_input(kComponent, "spec generates no points");
}

}  // namespace

MixtureSpec benchmark_spec(double sigma2) {
    MixtureSpec spec;
    spec.means = {{-1.0, -1.0}, {-1.0, 1.0}, {1.0, -1.0}, {1.0, 1.0}};
    spec.sigma2 = sigma2;
    spec.weights = {0.25, 0.25, 0.25, 0.25};
    spec.per_component = 25;
    spec.extra_points = {{0.0, 0.0}};
    return spec;
}

SyntheticData generate_data(const MixtureSpec& spec, std::uint64_t seed) {
    validate(spec);
    const double sd = std::sqrt(spec.sigma2);
    Rng rng(derive_seed(seed, SeedStream::data, 0));
    SyntheticData data;
    for (std::size_t g = 0; g < spec.means.size(); ++g) {
        for (std::int32_t p = 0; p < spec.per_component; ++p) {
            std::vector<double> point(spec.means[g].size());
            for (std::size_t j = 0; j < point.size(); ++j)
                point[j] = spec.means[g][j] + sd * rng.normal();
            data.points.push_back(std::move(point));
            data.true_labels.push_back(static_cast<std::int32_t>(g) + 1);
        }
    }
    for (const auto& x : spec.extra_points) {
        data.points.push_back(x);
        data.true_labels.push_back(0);
    }
    return data;
}

std::vector<std::vector<double>> assignment_probabilities(
    const std::vector<std::vector<double>>& points, const MixtureSpec& spec) {
    validate(spec);
    const std::size_t k = spec.means.size();
    std::vector<double> log_weight(k);
    for (std::size_t g = 0; g < k; ++g)
        log_weight[g] = spec.weights[g] > 0.0 ? std::log(spec.weights[g])
                                              : -std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> probs(points.size(), std::vector<double>(k));
    std::vector<double> logp(k);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& y = points[i];
        if (y.size() != spec.means.front().size())
            throw_input(kComponent, "point dimension does not match the mixture");
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t g = 0; g < k; ++g) {
            double sq = 0.0;
            for (std::size_t j = 0; j < y.size(); ++j) {
                const double d = y[j] - spec.means[g][j];
                sq += d * d;
            }
            logp[g] = log_weight[g] - sq / (2.0 * spec.sigma2);
            best = std::max(best, logp[g]);
        }
        double total = 0.0;
        for (std::size_t g = 0; g < k; ++g) {
            probs[i][g] = std::exp(logp[g] - best);
            total += probs[i][g];
        }
        for (std::size_t g = 0; g < k; ++g) probs[i][g] /= total;
    }
    return probs;
}

DrawSet sample_z_draws(const std::vector<std::vector<double>>& points, const MixtureSpec& spec,
                       std::int64_t draws, std::uint64_t seed) {
    if (draws < 1) throw_input(kComponent, "at least one draw is required");
    if (points.empty()) throw_input(kComponent, "no points to label");
    const std::vector<std::vector<double>> probs = assignment_probabilities(points, spec);
    const std::size_t k = spec.means.size();
    Rng rng(derive_seed(seed, SeedStream::labels, 0));

    std::vector<Partition> rows;
    rows.reserve(static_cast<std::size_t>(draws));
    std::vector<std::int32_t> labels(points.size());
    for (std::int64_t m = 0; m < draws; ++m) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double u = rng.uniform01();
            double acc = 0.0;
            std::size_t pick = k - 1;
            for (std::size_t g = 0; g < k; ++g) {
                acc += probs[i][g];
                if (u < acc) {
                    pick = g;
                    break;
                }
            }
            labels[i] = static_cast<std::int32_t>(pick) + 1;
        }
        rows.push_back(Partition::canonicalize(std::span<const std::int32_t>(labels)));
    }
    return DrawSet::from_partitions(std::move(rows));
}

ParamTable sample_mean_params(const std::vector<std::vector<double>>& points, const DrawSet& ds,
                              double sigma2, std::uint64_t seed) {
    if (!(sigma2 > 0.0)) throw_input(kComponent, "sigma2 must be positive");
    if (static_cast<std::int64_t>(points.size()) != ds.item_count())
        throw_input(kComponent, "points and draw set cover different item counts");
    const std::size_t dim = points.front().size();
    Rng rng(derive_seed(seed, SeedStream::params, 0));
    ParamTable table(ds.draw_count());
    std::vector<double> mean(dim);
    for (std::int64_t m = 0; m < ds.draw_count(); ++m) {
        const std::int32_t* row = ds.row(m);
        std::int32_t k = 0;
        for (std::int32_t i = 0; i < ds.item_count(); ++i) k = std::max(k, row[i]);
        for (std::int32_t c = 1; c <= k; ++c) {
            std::fill(mean.begin(), mean.end(), 0.0);
            std::int32_t size = 0;
            for (std::int32_t i = 0; i < ds.item_count(); ++i) {
                if (row[i] != c) continue;
                ++size;
                for (std::size_t j = 0; j < dim; ++j) mean[j] += points[static_cast<std::size_t>(i)][j];
            }
            const double scale = std::sqrt(sigma2 / static_cast<double>(size));
            std::vector<double> theta(dim);
            for (std::size_t j = 0; j < dim; ++j)
                theta[j] = mean[j] / static_cast<double>(size) + scale * rng.normal();
            table.insert(m, c, std::move(theta));
        }
    }
    return table;
}

}  // namespace chips
