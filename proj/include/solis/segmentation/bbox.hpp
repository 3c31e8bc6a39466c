#pragma once

#include <algorithm>
#include <string>

#include "solis/util/errors.hpp"

namespace solis {

// Axis-aligned pixel box, half-open: x in [x_min, x_max), y in [y_min, y_max).
struct BoundingBox {
    int x_min = 0, y_min = 0, x_max = 0, y_max = 0;

    int width() const { return x_max - x_min; }
    int height() const { return y_max - y_min; }
    long long area() const { return static_cast<long long>(width()) * height(); }

    bool well_formed() const { return x_min < x_max && y_min < y_max && x_min >= 0 && y_min >= 0; }

    void validate_for(int image_w, int image_h) const {
        if (!well_formed() || x_max > image_w || y_max > image_h)
            throw Error("bounding box out of range: [" + std::to_string(x_min) + "," +
                        std::to_string(y_min) + "," + std::to_string(x_max) + "," +
                        std::to_string(y_max) + "] for " + std::to_string(image_w) + "x" +
                        std::to_string(image_h));
    }

    BoundingBox clipped(int image_w, int image_h) const {
        return {std::max(0, x_min), std::max(0, y_min), std::min(image_w, x_max),
                std::min(image_h, y_max)};
    }

    bool operator==(const BoundingBox& o) const = default;
};

inline double iou(const BoundingBox& a, const BoundingBox& b) {
    const int ix_min = std::max(a.x_min, b.x_min);
    const int iy_min = std::max(a.y_min, b.y_min);
    const int ix_max = std::min(a.x_max, b.x_max);
    const int iy_max = std::min(a.y_max, b.y_max);
    const long long iw = std::max(0, ix_max - ix_min);
    const long long ih = std::max(0, iy_max - iy_min);
    const long long inter = iw * ih;
    const long long uni = a.area() + b.area() - inter;
    return uni > 0 ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

}  // namespace solis
