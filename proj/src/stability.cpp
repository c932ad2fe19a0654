#include <algorithm>
#include <cmath>
#include <map>

#include "chips/error.hpp"
#include "chips/greedy.hpp"
#include "chips/metrics.hpp"
#include "chips/rng.hpp"

namespace chips {

StabilityReport stability_report(const DrawSet& ds, double gamma, std::int32_t n_runs,
                                 std::int32_t repeats, std::uint64_t master_seed,
                                 unsigned threads) {
    if (n_runs < 1) throw_input("chips", "stability report needs at least one run per repeat");
    if (repeats < 2) throw_input("chips", "stability report needs at least two repeats");

    StabilityReport report;
    report.gamma = gamma;
    report.n_runs = n_runs;
    report.repeats = repeats;

    std::map<std::vector<std::int32_t>, std::int32_t> distinct;
    for (std::int32_t r = 0; r < repeats; ++r) {
        const std::vector<std::int32_t> starts =
            sample_starts(ds.item_count(), n_runs,
                          derive_seed(master_seed, SeedStream::starts, static_cast<std::uint64_t>(r)));
        const ChipsResult result =
            run_chips(ds, gamma, starts,
                      derive_seed(master_seed, SeedStream::repeat, static_cast<std::uint64_t>(r)),
                      threads);
        const ChipsCurve curve = chips_curve(result.traces);

        StabilityRepeat entry;
        entry.n0 = result.region.n0;
        entry.count = result.region.count;
        entry.probability = result.region.probability;
        entry.auchips = curve.auchips;
        entry.selection_ties = result.selection_ties;
        report.runs.push_back(entry);
        report.any_selection_ties = report.any_selection_ties || result.selection_ties > 1;
        ++distinct[result.region.subpartition.canonical_key()];
    }
    report.distinct_subpartitions = static_cast<std::int32_t>(distinct.size());

    double sum = 0.0;
    report.auchips_min = report.runs.front().auchips;
    report.auchips_max = report.runs.front().auchips;
    for (const StabilityRepeat& run : report.runs) {
        sum += run.auchips;
        report.auchips_min = std::min(report.auchips_min, run.auchips);
        report.auchips_max = std::max(report.auchips_max, run.auchips);
    }
    report.auchips_mean = sum / static_cast<double>(repeats);
    double ss = 0.0;
    for (const StabilityRepeat& run : report.runs) {
        const double d = run.auchips - report.auchips_mean;
        ss += d * d;
    }
    report.auchips_sd = std::sqrt(ss / static_cast<double>(repeats - 1));
    return report;
}

}  // namespace chips
