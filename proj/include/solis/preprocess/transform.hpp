#pragma once

#include <array>
#include <vector>

#include "solis/core/image.hpp"
#include "solis/util/rng.hpp"

namespace solis {

// Channel-major (CHW) normalized tensor fed to the classifier.
template <typename T>
struct Tensor3 {
    int c = 3, h = 0, w = 0;
    std::vector<T> data;

    Tensor3() = default;
    Tensor3(int c_, int h_, int w_)
        : c(c_), h(h_), w(w_), data(static_cast<std::size_t>(c_) * h_ * w_, T(0)) {}

    std::size_t plane_size() const { return static_cast<std::size_t>(h) * w; }
    T at(int ci, int y, int x) const { return data[ci * plane_size() + static_cast<std::size_t>(y) * w + x]; }
    T& at(int ci, int y, int x) { return data[ci * plane_size() + static_cast<std::size_t>(y) * w + x]; }
};

using Tensor3f = Tensor3<float>;
using Tensor3d = Tensor3<double>;

struct TransformConfig {
    int input_size = 224;
    double flip_probability = 0.5;
    // Training crops keep at least half the RoI area so the liquid never
    // drops out of frame entirely.
    std::array<double, 2> scale_range{0.5, 1.0};
    std::array<double, 2> aspect_range{3.0 / 4.0, 4.0 / 3.0};
    double eval_resize_factor = 1.143;  // 256/224 pattern, generalized
    std::array<double, 3> mean{0.485, 0.456, 0.406};
    std::array<double, 3> std_dev{0.229, 0.224, 0.225};
};

// Sampled parameters of one training-time random resized crop. Draw order is
// fixed (area, aspect, x0, y0, flip) so a given rng state always produces
// the same tensor.
struct CropParams {
    int x0 = 0, y0 = 0, w = 0, h = 0;
    bool flip = false;
};

CropParams sample_crop_params(int src_w, int src_h, const TransformConfig& config,
                              RngStream& rng);

template <typename T>
Tensor3<T> apply_crop_transform(const ImageRGB& crop, const CropParams& params,
                                const TransformConfig& config);

// Random resized crop -> bilinear resize to input_size -> horizontal flip
// with probability 0.5 -> scale to [0,1] -> per-channel normalize.
template <typename T>
Tensor3<T> train_transform(const ImageRGB& crop, const TransformConfig& config, RngStream& rng);

// Resize shorter side to round(input_size * eval_resize_factor), center crop
// input_size, scale, normalize. Fully deterministic.
template <typename T>
Tensor3<T> eval_transform(const ImageRGB& crop, const TransformConfig& config);

template <typename T>
void flip_horizontal(Tensor3<T>& t);

// Inverse of the scale+normalize step; used by tests to recover [0,1]
// intensities.
template <typename T>
Tensor3<T> denormalize(const Tensor3<T>& t, const TransformConfig& config);

}  // namespace solis
