#include "solis/dataset/folds.hpp"

#include <algorithm>
#include <cmath>

#include "solis/util/errors.hpp"
#include "solis/util/rng.hpp"

namespace solis {

FoldAssignment assign_folds(const std::vector<SampleRecord>& records, int k, std::uint64_t seed) {
    if (k < 2) throw ConfigError("assign_folds: k must be >= 2");
    if (static_cast<int>(records.size()) < k)
        throw ConfigError("assign_folds: k (" + std::to_string(k) + ") exceeds sample count (" +
                          std::to_string(records.size()) + ")");

    std::map<std::string, SolubilityLabel> label_of;
    for (const auto& r : records) label_of[r.sample_id] = r.label;
    if (label_of.size() != records.size())
        throw ConfigError("assign_folds: duplicate sample ids");

    std::vector<std::string> ids;
    ids.reserve(records.size());
    for (const auto& [id, l] : label_of) ids.push_back(id);
    std::sort(ids.begin(), ids.end());

    RngStream rng = RngStream::derive(seed, {rng_tag::kFolds});
    rng.shuffle(ids);

    FoldAssignment fa;
    fa.k = k;
    fa.seed = seed;
    int cursor = 0;
    for (SolubilityLabel stratum : {SolubilityLabel::Undissolved, SolubilityLabel::Dissolved}) {
        for (const auto& id : ids) {
            if (label_of[id] != stratum) continue;
            fa.assignment[id] = cursor;
            cursor = (cursor + 1) % k;
        }
    }
    return fa;
}

void apply_folds(std::vector<SampleRecord>& records, const FoldAssignment& fa) {
    for (auto& r : records) r.fold = fa.fold_of(r.sample_id);
}

std::pair<std::vector<std::string>, std::vector<std::string>> train_val_split(
    const std::vector<std::string>& ids, double val_fraction, std::uint64_t seed) {
    if (!(val_fraction > 0.0 && val_fraction < 1.0))
        throw ConfigError("train_val_split: val_fraction must be in (0, 1)");
    if (ids.size() < 2) throw ConfigError("train_val_split: need at least 2 ids");

    std::vector<std::string> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    RngStream rng = RngStream::derive(seed, {rng_tag::kValSplit});
    rng.shuffle(sorted);

    std::size_t n_val = static_cast<std::size_t>(
        std::llround(val_fraction * static_cast<double>(sorted.size())));
    n_val = std::max<std::size_t>(1, std::min(n_val, sorted.size() - 1));

    std::vector<std::string> val(sorted.begin(), sorted.begin() + n_val);
    std::vector<std::string> train(sorted.begin() + n_val, sorted.end());
    return {train, val};
}

}  // namespace solis
