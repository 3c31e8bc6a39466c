#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "solis/core/image.hpp"

namespace solis::kernels {

// Per-channel median of the pixels in a `ring`-wide frame along the image
// border (median = element n/2 of the sorted ring values).
std::array<std::uint8_t, 3> border_median_color(const ImageRGB& img, int ring);

// mask[i] = 1 where the Euclidean RGB distance from `color` exceeds `delta`.
void color_distance_mask(const ImageRGB& img, const std::array<std::uint8_t, 3>& color,
                         double delta, std::vector<std::uint8_t>& mask);

struct Component {
    int area = 0;
    int x_min = 0, y_min = 0, x_max = 0, y_max = 0;  // half-open box
};

// 4-connected components of the nonzero mask pixels, in row-major discovery
// order. Serial: label propagation is inherently ordered and the masks here
// are small. When `labels` is non-null it receives the per-pixel component
// index (-1 for background).
std::vector<Component> connected_components(const std::vector<std::uint8_t>& mask, int width,
                                            int height,
                                            std::vector<std::int32_t>* labels = nullptr);

}  // namespace solis::kernels
