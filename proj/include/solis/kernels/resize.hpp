#pragma once

#include <vector>

#include "solis/core/image.hpp"

namespace solis::kernels {

// Bilinear resampling of a source rectangle into out_w x out_h, channel-major
// output planes with values in [0, 255].
//
// Kernel definition (align-corners = false): for output pixel ox the sample
// point is sx = (ox + 0.5) * rect_w / out_w - 0.5 relative to the rectangle,
// neighbor indices are clamped to the rectangle, and weights are computed in
// double before the result is cast to T. This is the only resampler in the
// pipeline; its definition is part of the reproducibility contract.
template <typename T>
void bilinear_resize_rect(const ImageRGB& src, int rx, int ry, int rw, int rh, int out_w,
                          int out_h, std::vector<T>& out_chw);

template <typename T>
void bilinear_resize(const ImageRGB& src, int out_w, int out_h, std::vector<T>& out_chw);

}  // namespace solis::kernels
