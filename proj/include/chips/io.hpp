#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "chips/draw_store.hpp"
#include "chips/infer.hpp"

namespace chips {

// A draw set together with the per-row mapping from the file's raw labels to
// the canonical labels, needed to resolve parameter files that refer to
// labels as written.
struct LoadedDraws {
    DrawSet draws;
    std::vector<std::unordered_map<std::int64_t, std::int32_t>> raw_to_canonical;
};

// CSV of posterior label vectors: rows are iterations, columns are items,
// cells are integer labels; one optional header row. Errors name the
// offending row and column (1-based, header included in the count).
LoadedDraws ingest_draws(const std::string& path);

// CSV of cluster-parameter draws: iteration (1-based), label (as written in
// that iteration's row of the draws file), then the d parameter columns.
// Keys are remapped through the draws' canonicalization; duplicates and
// labels absent from the referenced row are rejected.
ParamTable ingest_params(const std::string& path, const LoadedDraws& draws);

// Canonical labels, one row per draw, no header.
void write_draws_csv(const DrawSet& ds, const std::string& path);

void write_matrix_csv(const std::vector<std::vector<double>>& rows, const std::string& header,
                      const std::string& path);

}  // namespace chips
