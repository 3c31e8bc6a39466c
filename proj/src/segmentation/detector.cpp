#include "solis/segmentation/detector.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "solis/kernels/image_ops.hpp"
#include "solis/util/errors.hpp"

namespace solis {

std::vector<SegmentationResult> fallback_detect(const ImageRGB& image,
                                                const FallbackConfig& config) {
    if (!image.valid()) throw Error("fallback_detect: invalid image");

    const auto bg = kernels::border_median_color(image, config.border_ring);
    std::vector<std::uint8_t> mask;
    kernels::color_distance_mask(image, bg, config.color_delta, mask);
    std::vector<std::int32_t> labels;
    const auto comps = kernels::connected_components(mask, image.width, image.height, &labels);

    const long long area_floor = static_cast<long long>(
        std::ceil(config.min_area_fraction * image.width * image.height));

    struct Scored {
        SegmentationResult result;
        long long area;
        long long score_bin;
        std::int32_t comp_id;
    };
    std::vector<Scored> kept;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const auto& c = comps[ci];
        if (c.area < area_floor) continue;
        SegmentationResult r;
        r.bbox = {c.x_min, c.y_min, c.x_max, c.y_max};
        r.score = static_cast<double>(c.area) / static_cast<double>(r.bbox.area());
        r.class_name = "vessel";
        const long long bin =
            static_cast<long long>(std::floor(r.score / config.score_resolution));
        kept.push_back({std::move(r), c.area, bin, static_cast<std::int32_t>(ci)});
    }

    std::sort(kept.begin(), kept.end(), [](const Scored& a, const Scored& b) {
        if (a.score_bin != b.score_bin) return a.score_bin > b.score_bin;
        if (a.area != b.area) return a.area > b.area;
        if (a.result.bbox.x_min != b.result.bbox.x_min)
            return a.result.bbox.x_min < b.result.bbox.x_min;
        return a.result.bbox.y_min < b.result.bbox.y_min;
    });

    std::vector<SegmentationResult> out;
    out.reserve(kept.size());
    for (auto& k : kept) {
        std::vector<std::uint8_t> comp_mask(labels.size(), 0);
        for (int y = k.result.bbox.y_min; y < k.result.bbox.y_max; ++y)
            for (int x = k.result.bbox.x_min; x < k.result.bbox.x_max; ++x) {
                const std::size_t i = static_cast<std::size_t>(y) * image.width + x;
                if (labels[i] == k.comp_id) comp_mask[i] = 1;
            }
        k.result.mask = std::move(comp_mask);
        out.push_back(std::move(k.result));
    }
    return out;
}

ModelAdapterConfig ModelAdapterConfig::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model adapter config: " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("model adapter config: invalid JSON: " + std::string(e.what()));
    }
    static const std::vector<std::string> known{"weights_path", "vessel_class_names",
                                               "score_threshold", "device"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("model adapter config: unknown key \"" + key + "\"");
    }
    ModelAdapterConfig c;
    try {
        c.weights_path = j.at("weights_path").get<std::string>();
        c.vessel_class_names = j.at("vessel_class_names").get<std::vector<std::string>>();
        c.score_threshold = j.value("score_threshold", 0.5);
        c.device = j.value("device", std::string("cpu"));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("model adapter config: " + std::string(e.what()));
    }
    if (c.vessel_class_names.empty())
        throw ConfigError("model adapter config: vessel_class_names must not be empty");
    if (c.score_threshold < 0.0 || c.score_threshold > 1.0)
        throw ConfigError("model adapter config: score_threshold must be in [0, 1]");
    return c;
}

ModelAdapterDetector::ModelAdapterDetector(ModelAdapterConfig config, RawDetectorFn infer)
    : config_(std::move(config)), infer_(std::move(infer)) {
    if (!infer_) throw ConfigError("model adapter: no inference callable supplied");
}

std::vector<SegmentationResult> ModelAdapterDetector::detect(const ImageRGB& image) const {
    std::vector<SegmentationResult> out;
    for (auto& raw : infer_(image)) {
        if (std::find(config_.vessel_class_names.begin(), config_.vessel_class_names.end(),
                      raw.class_name) == config_.vessel_class_names.end())
            continue;
        SegmentationResult r;
        r.bbox = raw.bbox;
        r.score = raw.score;
        r.class_name = "vessel";
        r.mask = std::move(raw.mask);
        out.push_back(std::move(r));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const SegmentationResult& a, const SegmentationResult& b) {
                         return a.score > b.score;
                     });
    return out;
}

SegmentationResult detect_vial(const ImageRGB& image, const DetectorBackend& backend) {
    if (!image.valid()) throw Error("detect_vial: invalid image");
    auto results = backend.detect(image);
    if (backend.capability() == DetectorCapability::ModelAdapter) {
        std::erase_if(results, [&](const SegmentationResult& r) {
            return r.score < backend.score_threshold();
        });
    }
    if (results.empty()) throw VialNotFoundError("vial not found");
    SegmentationResult best = std::move(results.front());
    best.bbox = best.bbox.clipped(image.width, image.height);
    best.bbox.validate_for(image.width, image.height);
    return best;
}

ImageRGB crop_roi(const ImageRGB& image, const BoundingBox& bbox, double padding) {
    if (!image.valid()) throw Error("crop_roi: invalid image");
    bbox.validate_for(image.width, image.height);
    if (padding < 0.0) throw Error("crop_roi: negative padding");

    const int pad_x = static_cast<int>(std::lround(padding * bbox.width()));
    const int pad_y = static_cast<int>(std::lround(padding * bbox.height()));
    const BoundingBox expanded{bbox.x_min - pad_x, bbox.y_min - pad_y, bbox.x_max + pad_x,
                               bbox.y_max + pad_y};
    const BoundingBox roi = expanded.clipped(image.width, image.height);

    ImageRGB crop(roi.width(), roi.height());
    for (int y = 0; y < roi.height(); ++y) {
        const std::uint8_t* src = image.data.data() + image.offset(roi.y_min + y, roi.x_min);
        std::uint8_t* dst = crop.data.data() + crop.offset(y, 0);
        std::copy(src, src + static_cast<std::size_t>(roi.width()) * 3, dst);
    }
    return crop;
}

}  // namespace solis
