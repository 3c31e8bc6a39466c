#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "solis/dataset/manifest.hpp"

namespace solis {

// Deterministic stratified k-fold partition. A pure function of the id set,
// label map, k, and seed: ids are sorted, Fisher-Yates shuffled with the
// seeded stream, grouped by label, and dealt round-robin with a fold cursor
// that continues across label strata (this keeps both per-fold sizes and
// per-fold label counts within one of proportional).
struct FoldAssignment {
    int k = 0;
    std::uint64_t seed = 0;
    std::map<std::string, int> assignment;  // sample_id -> fold index

    int fold_of(const std::string& id) const { return assignment.at(id); }
};

FoldAssignment assign_folds(const std::vector<SampleRecord>& records, int k, std::uint64_t seed);

// Applies an assignment back onto records (fills the fold field).
void apply_folds(std::vector<SampleRecord>& records, const FoldAssignment& fa);

// Deterministic, disjoint, exhaustive split of ids for early-stopping
// validation. val size = round(val_fraction * n), at least 1.
std::pair<std::vector<std::string>, std::vector<std::string>> train_val_split(
    const std::vector<std::string>& ids, double val_fraction, std::uint64_t seed);

}  // namespace solis
