#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>

namespace chips {

// All randomness in the library flows through this header so that results
// are reproducible bit-for-bit across platforms. std::mt19937_64 is fully
// specified by the standard; the distributions below are hand-rolled because
// the standard library's are not.

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Named sub-streams of a master seed. Seeds for independent purposes are
// derived as derive_seed(master, stream, index); the chain is stable and
// independent of execution order.
enum class SeedStream : std::uint64_t {
    greedy_run = 1,   // per-run tie-breaking generators
    selection = 2,    // tie-breaking among equally good traces
    starts = 3,       // sampling start lists
    repeat = 4,       // per-repeat masters in the stability report
    data = 5,         // synthetic data generation
    labels = 6,       // synthetic posterior label draws
    params = 7,       // synthetic cluster-parameter draws
    completion = 8    // per-restart generators in point-estimate completion
};

constexpr std::uint64_t derive_seed(std::uint64_t master, SeedStream stream, std::uint64_t index) {
    const std::uint64_t s = mix64(static_cast<std::uint64_t>(stream) + 0x9E3779B97F4A7C15ULL);
    return mix64(mix64(master ^ s) + index);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased integer in [0, bound) via masked rejection.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(bound - 1);
        std::uint64_t v;
        do {
            v = next_u64() & mask;
        } while (v >= bound);
        return v;
    }

    // Standard normal via Box-Muller; one deviate per call, spare cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace chips
