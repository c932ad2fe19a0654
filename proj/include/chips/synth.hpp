#pragma once

#include <cstdint>
#include <vector>

#include "chips/draw_store.hpp"
#include "chips/infer.hpp"

namespace chips {

// Finite Gaussian mixture with fixed atoms, weights, and component count;
// only the component labels are random. Components share an isotropic
// covariance sigma2 * I.
struct MixtureSpec {
    std::vector<std::vector<double>> means;
    double sigma2 = 0.0;
    std::vector<double> weights;
    std::int32_t per_component = 0;
    std::vector<std::vector<double>> extra_points;
};

// Four components at the corners (+-1, +-1), equal weights, 25 points each,
// plus one extra point at the origin that every component explains equally.
MixtureSpec benchmark_spec(double sigma2);

struct SyntheticData {
    std::vector<std::vector<double>> points;  // n x d
    std::vector<std::int32_t> true_labels;    // 1..K for bulk points, 0 for extras
};

// Bulk points drawn per component in order, then the extra points appended.
// Draw order (component, point, coordinate) is fixed, so a seed pins the
// data set exactly.
SyntheticData generate_data(const MixtureSpec& spec, std::uint64_t seed);

// Posterior label probabilities per item under the fixed-atom model,
// Pr(z_i = k) proportional to weight_k * N(y_i; mean_k, sigma2 I), computed
// in log space.
std::vector<std::vector<double>> assignment_probabilities(
    const std::vector<std::vector<double>>& points, const MixtureSpec& spec);

// M independent label vectors from the full conditionals (labels are
// conditionally independent because atoms and weights are fixed), each row
// canonicalized.
DrawSet sample_z_draws(const std::vector<std::vector<double>>& points, const MixtureSpec& spec,
                       std::int64_t draws, std::uint64_t seed);

// Per-draw cluster-mean draws for the fixed-variance model under a flat
// prior: for each draw and each of its clusters, mean(members) plus
// N(0, sigma2/|C| I) noise. Feeds conditional parameter inference for the
// synthetic benchmark.
ParamTable sample_mean_params(const std::vector<std::vector<double>>& points, const DrawSet& ds,
                              double sigma2, std::uint64_t seed);

}  // namespace chips
