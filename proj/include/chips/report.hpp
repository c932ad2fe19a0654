#pragma once

#include <cstdint>
#include <string>

#include "chips/estimate.hpp"

namespace chips {

struct RunConfig {
    std::string input_path;    // draws CSV; empty when synth is set
    std::string params_path;   // optional cluster-parameter CSV
    std::string output_dir = ".";

    double gamma = 0.95;
    double alpha = 0.95;
    Loss loss = Loss::binder;
    std::int32_t n_runs = 0;   // 0 = min(n, 100)
    std::uint64_t seed = 12345;
    unsigned threads = 0;      // 0 = hardware default
    std::int32_t stability_repeats = 0;  // < 2 disables the stability section
    std::int32_t restarts = 16;
    std::string kernel = "auto";

    // Synthetic benchmark preset: generate the mixture data and label draws
    // in place of an input file (the generated CSVs are written next to the
    // report).
    bool synth = false;
    double synth_sigma2 = 0.1;
    std::int64_t synth_draws = 10000;
};

// Runs the full pipeline and writes report.json, chips_curve.csv,
// unit_uncertainty.csv, and theta_samples_<j>.csv (one per subpartition
// cluster, when parameters are available) into output_dir. Identical
// (inputs, config, seed) produce byte-identical files.
std::string run_report(const RunConfig& cfg);

}  // namespace chips
