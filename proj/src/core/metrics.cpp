#include "solis/core/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "solis/util/errors.hpp"

namespace solis {

std::array<double, 2> softmax(const std::array<double, 2>& logits) {
    if (!std::isfinite(logits[0]) || !std::isfinite(logits[1]))
        throw Error("invalid logits");
    double m = std::max(logits[0], logits[1]);
    double e0 = std::exp(logits[0] - m);
    double e1 = std::exp(logits[1] - m);
    double z = e0 + e1;
    return {e0 / z, e1 / z};
}

static void check_distribution(const std::array<double, 2>& p) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1]) || p[0] < 0.0 || p[0] > 1.0 ||
        p[1] < 0.0 || p[1] > 1.0 || std::abs(p[0] + p[1] - 1.0) > 1e-6)
        throw Error("malformed probability distribution");
}

double cross_entropy(const std::array<double, 2>& probabilities, SolubilityLabel target) {
    check_distribution(probabilities);
    double p = probabilities[static_cast<int>(target)];
    return -std::log(std::max(p, kCeProbClamp));
}

SolubilityLabel argmax_label(const std::array<double, 2>& probabilities) {
    return probabilities[1] > probabilities[0] ? SolubilityLabel::Dissolved
                                               : SolubilityLabel::Undissolved;
}

double pooled_accuracy(const std::vector<PredictionRecord>& records) {
    if (records.empty()) throw Error("no predictions");
    std::size_t correct = 0;
    for (const auto& r : records) {
        if (r.detection_failed) continue;
        if (r.target.has_value() && r.predicted == *r.target) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(records.size());
}

PredictionRecord make_prediction(const std::string& sample_id,
                                 const std::array<double, 2>& logits,
                                 std::optional<SolubilityLabel> target, int fold) {
    PredictionRecord rec;
    rec.sample_id = sample_id;
    rec.logits = logits;
    rec.probabilities = softmax(logits);
    rec.predicted = argmax_label(rec.probabilities);
    rec.target = target;
    rec.ce_loss = target.has_value() ? cross_entropy(rec.probabilities, *target) : 0.0;
    rec.fold = fold;
    return rec;
}

}  // namespace solis
