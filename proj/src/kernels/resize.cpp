#include "solis/kernels/resize.hpp"

#include <algorithm>
#include <cmath>

#include "solis/kernels/parallel.hpp"
#include "solis/util/errors.hpp"

namespace solis::kernels {

template <typename T>
void bilinear_resize_rect(const ImageRGB& src, int rx, int ry, int rw, int rh, int out_w,
                          int out_h, std::vector<T>& out_chw) {
    if (rw < 1 || rh < 1 || rx < 0 || ry < 0 || rx + rw > src.width || ry + rh > src.height)
        throw Error("bilinear_resize_rect: rectangle out of bounds");
    out_chw.assign(static_cast<std::size_t>(3) * out_w * out_h, T(0));

    const double sx_scale = static_cast<double>(rw) / out_w;
    const double sy_scale = static_cast<double>(rh) / out_h;
    const std::size_t plane = static_cast<std::size_t>(out_w) * out_h;
    const bool par = parallel_enabled();

#pragma omp parallel for if (par)
    for (int oy = 0; oy < out_h; ++oy) {
        const double sy = (oy + 0.5) * sy_scale - 0.5;
        const double fy0 = std::floor(sy);
        const double wy1 = sy - fy0;
        int y0 = std::clamp(static_cast<int>(fy0), 0, rh - 1);
        int y1 = std::clamp(static_cast<int>(fy0) + 1, 0, rh - 1);
        for (int ox = 0; ox < out_w; ++ox) {
            const double sx = (ox + 0.5) * sx_scale - 0.5;
            const double fx0 = std::floor(sx);
            const double wx1 = sx - fx0;
            int x0 = std::clamp(static_cast<int>(fx0), 0, rw - 1);
            int x1 = std::clamp(static_cast<int>(fx0) + 1, 0, rw - 1);
            for (int c = 0; c < 3; ++c) {
                const double p00 = src.at(ry + y0, rx + x0, c);
                const double p01 = src.at(ry + y0, rx + x1, c);
                const double p10 = src.at(ry + y1, rx + x0, c);
                const double p11 = src.at(ry + y1, rx + x1, c);
                const double v = (1.0 - wy1) * ((1.0 - wx1) * p00 + wx1 * p01) +
                                 wy1 * ((1.0 - wx1) * p10 + wx1 * p11);
                out_chw[c * plane + static_cast<std::size_t>(oy) * out_w + ox] =
                    static_cast<T>(v);
            }
        }
    }
}

template <typename T>
void bilinear_resize(const ImageRGB& src, int out_w, int out_h, std::vector<T>& out_chw) {
    bilinear_resize_rect<T>(src, 0, 0, src.width, src.height, out_w, out_h, out_chw);
}

template void bilinear_resize_rect<float>(const ImageRGB&, int, int, int, int, int, int,
                                          std::vector<float>&);
template void bilinear_resize_rect<double>(const ImageRGB&, int, int, int, int, int, int,
                                           std::vector<double>&);
template void bilinear_resize<float>(const ImageRGB&, int, int, std::vector<float>&);
template void bilinear_resize<double>(const ImageRGB&, int, int, std::vector<double>&);

}  // namespace solis::kernels
