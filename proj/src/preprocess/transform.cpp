#include "solis/preprocess/transform.hpp"

#include <algorithm>
#include <cmath>

#include "solis/kernels/resize.hpp"
#include "solis/util/errors.hpp"

namespace solis {

namespace {

void check_crop(const ImageRGB& crop) {
    if (!crop.valid()) throw Error("transform: invalid image");
    if (crop.width < 8 || crop.height < 8) throw Error("degenerate RoI");
}

template <typename T>
void normalize_inplace(std::vector<T>& chw, int h, int w, const TransformConfig& config) {
    const std::size_t plane = static_cast<std::size_t>(h) * w;
    for (int c = 0; c < 3; ++c) {
        const T mean = static_cast<T>(config.mean[c]);
        const T inv_std = static_cast<T>(1.0 / config.std_dev[c]);
        const T inv255 = static_cast<T>(1.0 / 255.0);
        T* p = chw.data() + c * plane;
        for (std::size_t i = 0; i < plane; ++i) p[i] = (p[i] * inv255 - mean) * inv_std;
    }
}

}  // namespace

CropParams sample_crop_params(int src_w, int src_h, const TransformConfig& config,
                              RngStream& rng) {
    const double src_area = static_cast<double>(src_w) * src_h;
    const double area_frac = rng.uniform(config.scale_range[0], config.scale_range[1]);
    const double aspect = rng.uniform(config.aspect_range[0], config.aspect_range[1]);
    const double target_area = area_frac * src_area;

    int w = static_cast<int>(std::lround(std::sqrt(target_area * aspect)));
    int h = static_cast<int>(std::lround(std::sqrt(target_area / aspect)));
    w = std::clamp(w, 1, src_w);
    h = std::clamp(h, 1, src_h);

    CropParams p;
    p.w = w;
    p.h = h;
    p.x0 = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(src_w - w + 1)));
    p.y0 = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(src_h - h + 1)));
    p.flip = rng.bernoulli(config.flip_probability);
    return p;
}

template <typename T>
Tensor3<T> apply_crop_transform(const ImageRGB& crop, const CropParams& params,
                                const TransformConfig& config) {
    check_crop(crop);
    const int s = config.input_size;
    Tensor3<T> t(3, s, s);
    kernels::bilinear_resize_rect<T>(crop, params.x0, params.y0, params.w, params.h, s, s,
                                     t.data);
    if (params.flip) flip_horizontal(t);
    normalize_inplace(t.data, s, s, config);
    return t;
}

template <typename T>
Tensor3<T> train_transform(const ImageRGB& crop, const TransformConfig& config, RngStream& rng) {
    check_crop(crop);
    const CropParams p = sample_crop_params(crop.width, crop.height, config, rng);
    return apply_crop_transform<T>(crop, p, config);
}

template <typename T>
Tensor3<T> eval_transform(const ImageRGB& crop, const TransformConfig& config) {
    check_crop(crop);
    const int s = config.input_size;
    const int target_short = static_cast<int>(std::lround(s * config.eval_resize_factor));

    int rw, rh;
    if (crop.width <= crop.height) {
        rw = target_short;
        rh = std::max(
            s, static_cast<int>(std::lround(static_cast<double>(crop.height) * target_short /
                                            crop.width)));
    } else {
        rh = target_short;
        rw = std::max(
            s, static_cast<int>(std::lround(static_cast<double>(crop.width) * target_short /
                                            crop.height)));
    }

    std::vector<T> resized;
    kernels::bilinear_resize<T>(crop, rw, rh, resized);

    Tensor3<T> t(3, s, s);
    const int x_off = (rw - s) / 2;
    const int y_off = (rh - s) / 2;
    const std::size_t src_plane = static_cast<std::size_t>(rw) * rh;
    for (int c = 0; c < 3; ++c)
        for (int y = 0; y < s; ++y) {
            const T* src = resized.data() + c * src_plane +
                           static_cast<std::size_t>(y + y_off) * rw + x_off;
            std::copy(src, src + s, t.data.data() + t.plane_size() * c +
                                        static_cast<std::size_t>(y) * s);
        }
    normalize_inplace(t.data, s, s, config);
    return t;
}

template <typename T>
void flip_horizontal(Tensor3<T>& t) {
    for (int c = 0; c < t.c; ++c)
        for (int y = 0; y < t.h; ++y) {
            T* row = t.data.data() + t.plane_size() * c + static_cast<std::size_t>(y) * t.w;
            std::reverse(row, row + t.w);
        }
}

template <typename T>
Tensor3<T> denormalize(const Tensor3<T>& t, const TransformConfig& config) {
    Tensor3<T> out = t;
    const std::size_t plane = out.plane_size();
    for (int c = 0; c < 3; ++c) {
        const T mean = static_cast<T>(config.mean[c]);
        const T sd = static_cast<T>(config.std_dev[c]);
        T* p = out.data.data() + c * plane;
        for (std::size_t i = 0; i < plane; ++i) p[i] = p[i] * sd + mean;
    }
    return out;
}

#define SOLIS_INSTANTIATE_TRANSFORM(T)                                                       \
    template Tensor3<T> apply_crop_transform<T>(const ImageRGB&, const CropParams&,          \
                                                const TransformConfig&);                     \
    template Tensor3<T> train_transform<T>(const ImageRGB&, const TransformConfig&,          \
                                           RngStream&);                                      \
    template Tensor3<T> eval_transform<T>(const ImageRGB&, const TransformConfig&);          \
    template void flip_horizontal<T>(Tensor3<T>&);                                           \
    template Tensor3<T> denormalize<T>(const Tensor3<T>&, const TransformConfig&);

SOLIS_INSTANTIATE_TRANSFORM(float)
SOLIS_INSTANTIATE_TRANSFORM(double)
#undef SOLIS_INSTANTIATE_TRANSFORM

}  // namespace solis
