#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "solis/core/label.hpp"

namespace solis {

// Probabilities below this are clamped before taking the log, so reported
// losses stay finite. The clamp value is echoed in report metadata.
inline constexpr double kCeProbClamp = 1e-12;

// One classifier verdict for one sample. All metric arithmetic is double
// regardless of model precision so reports compare across implementations.
struct PredictionRecord {
    std::string sample_id;
    std::array<double, 2> logits{0.0, 0.0};
    std::array<double, 2> probabilities{0.0, 0.0};
    SolubilityLabel predicted = SolubilityLabel::Undissolved;
    std::optional<SolubilityLabel> target;  // absent at inference time
    double ce_loss = 0.0;
    int fold = -1;
    // Set when the vial detector found nothing; such records count as
    // incorrect and carry the clamped CE loss.
    bool detection_failed = false;
};

// Numerically stable two-class softmax (max subtraction). Throws on
// non-finite logits ("invalid logits").
std::array<double, 2> softmax(const std::array<double, 2>& logits);

// -ln(p_target), clamped at -ln(kCeProbClamp). Validates the distribution.
double cross_entropy(const std::array<double, 2>& probabilities, SolubilityLabel target);

// argmax with ties broken toward Undissolved (the conservative verdict: a
// false "dissolved" ends a workflow step early).
SolubilityLabel argmax_label(const std::array<double, 2>& probabilities);

// Fraction correct over the pooled record list (not averaged per fold).
// Records flagged detection_failed count as incorrect. Throws on empty
// input ("no predictions").
double pooled_accuracy(const std::vector<PredictionRecord>& records);

// Builds a consistent record from raw logits: softmax, argmax, CE.
PredictionRecord make_prediction(const std::string& sample_id,
                                 const std::array<double, 2>& logits,
                                 std::optional<SolubilityLabel> target, int fold);

}  // namespace solis
