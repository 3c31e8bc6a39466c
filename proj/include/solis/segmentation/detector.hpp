#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "solis/core/image.hpp"
#include "solis/segmentation/bbox.hpp"

namespace solis {

struct SegmentationResult {
    BoundingBox bbox;
    double score = 0.0;  // in [0, 1]
    std::string class_name = "vessel";
    // Full-image binary mask of the detected extent; carried but unused
    // downstream (the classifier consumes only the box).
    std::optional<std::vector<std::uint8_t>> mask;
};

enum class DetectorCapability { ModelAdapter, SyntheticFallback };

// Behavioral contract for stage one. detect() returns vessel candidates
// sorted by descending score and must be safe for concurrent calls once the
// backend is constructed.
class DetectorBackend {
public:
    virtual ~DetectorBackend() = default;
    virtual std::string name() const = 0;
    virtual DetectorCapability capability() const = 0;
    // Minimum score kept by detect_vial; only model adapters filter.
    virtual double score_threshold() const { return 0.0; }
    virtual std::vector<SegmentationResult> detect(const ImageRGB& image) const = 0;
};

// Deterministic detector that needs no weights: estimates the background
// color from a border ring, thresholds on color distance, and extracts
// 4-connected components.
struct FallbackConfig {
    double color_delta = 48.0;        // RGB distance threshold
    double min_area_fraction = 0.005; // components below this are dropped
    int border_ring = 4;
    // Scores (component area / box area) are compared at this resolution;
    // within a bin the larger component wins, making multi-vial frames
    // deterministic.
    double score_resolution = 0.05;
};

std::vector<SegmentationResult> fallback_detect(const ImageRGB& image,
                                                const FallbackConfig& config = {});

class FallbackDetector : public DetectorBackend {
public:
    explicit FallbackDetector(FallbackConfig config = {}) : config_(config) {}
    std::string name() const override { return "synthetic-fallback"; }
    DetectorCapability capability() const override {
        return DetectorCapability::SyntheticFallback;
    }
    std::vector<SegmentationResult> detect(const ImageRGB& image) const override {
        return fallback_detect(image, config_);
    }

private:
    FallbackConfig config_;
};

// Adapter contract for an externally serialized instance-segmentation model.
// The repo ships the contract (config schema + this wrapper + a conformance
// test), not weights; integrators supply the inference callable.
struct ModelAdapterConfig {
    std::string weights_path;
    std::vector<std::string> vessel_class_names;
    double score_threshold = 0.5;
    std::string device = "cpu";

    static ModelAdapterConfig from_json_file(const std::filesystem::path& path);
};

struct RawDetection {
    BoundingBox bbox;
    double score = 0.0;
    std::string class_name;
    std::optional<std::vector<std::uint8_t>> mask;
};

using RawDetectorFn = std::function<std::vector<RawDetection>(const ImageRGB&)>;

class ModelAdapterDetector : public DetectorBackend {
public:
    ModelAdapterDetector(ModelAdapterConfig config, RawDetectorFn infer);

    std::string name() const override { return "model-adapter"; }
    DetectorCapability capability() const override { return DetectorCapability::ModelAdapter; }
    double score_threshold() const override { return config_.score_threshold; }
    // Keeps vessel classes only, sorted by descending score.
    std::vector<SegmentationResult> detect(const ImageRGB& image) const override;

private:
    ModelAdapterConfig config_;
    RawDetectorFn infer_;
};

// Highest-score vessel detection with the backend's filtering applied; the
// returned box is clipped to the image. Throws VialNotFoundError when no
// candidate survives.
SegmentationResult detect_vial(const ImageRGB& image, const DetectorBackend& backend);

// Sub-image of bbox expanded by `padding` (fraction of box size) per side
// and clipped; exact pixel copy, no resampling.
ImageRGB crop_roi(const ImageRGB& image, const BoundingBox& bbox, double padding = 0.05);

}  // namespace solis
