#include "solis/kernels/image_ops.hpp"

#include <algorithm>

#include "solis/kernels/parallel.hpp"
#include "solis/util/errors.hpp"

namespace solis::kernels {

std::array<std::uint8_t, 3> border_median_color(const ImageRGB& img, int ring) {
    if (!img.valid()) throw Error("border_median_color: invalid image");
    ring = std::min({ring, (img.width + 1) / 2, (img.height + 1) / 2});
    std::array<std::vector<std::uint8_t>, 3> vals;
    for (int y = 0; y < img.height; ++y) {
        const bool edge_row = y < ring || y >= img.height - ring;
        for (int x = 0; x < img.width; ++x) {
            if (!edge_row && x >= ring && x < img.width - ring) {
                x = img.width - ring - 1;  // skip interior span
                continue;
            }
            for (int c = 0; c < 3; ++c) vals[c].push_back(img.at(y, x, c));
        }
    }
    std::array<std::uint8_t, 3> out{};
    for (int c = 0; c < 3; ++c) {
        auto& v = vals[c];
        auto mid = v.begin() + v.size() / 2;
        std::nth_element(v.begin(), mid, v.end());
        out[c] = *mid;
    }
    return out;
}

void color_distance_mask(const ImageRGB& img, const std::array<std::uint8_t, 3>& color,
                         double delta, std::vector<std::uint8_t>& mask) {
    const int n = img.width * img.height;
    mask.assign(n, 0);
    const double d2 = delta * delta;
    const bool par = parallel_enabled();

#pragma omp parallel for if (par)
    for (int i = 0; i < n; ++i) {
        const std::uint8_t* p = img.data.data() + static_cast<std::size_t>(i) * 3;
        const double dr = static_cast<double>(p[0]) - color[0];
        const double dg = static_cast<double>(p[1]) - color[1];
        const double db = static_cast<double>(p[2]) - color[2];
        mask[i] = (dr * dr + dg * dg + db * db > d2) ? 1 : 0;
    }
}

std::vector<Component> connected_components(const std::vector<std::uint8_t>& mask, int width,
                                            int height, std::vector<std::int32_t>* labels) {
    std::vector<Component> comps;
    std::vector<std::int32_t> label(static_cast<std::size_t>(width) * height, -1);
    std::vector<std::int32_t> stack;

    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const std::int32_t start = y * width + x;
            if (!mask[start] || label[start] >= 0) continue;
            const std::int32_t id = static_cast<std::int32_t>(comps.size());
            Component comp{0, x, y, x + 1, y + 1};
            stack.clear();
            stack.push_back(start);
            label[start] = id;
            while (!stack.empty()) {
                const std::int32_t p = stack.back();
                stack.pop_back();
                const int py = p / width, px = p % width;
                ++comp.area;
                comp.x_min = std::min(comp.x_min, px);
                comp.y_min = std::min(comp.y_min, py);
                comp.x_max = std::max(comp.x_max, px + 1);
                comp.y_max = std::max(comp.y_max, py + 1);
                const int nx[4] = {px - 1, px + 1, px, px};
                const int ny[4] = {py, py, py - 1, py + 1};
                for (int k = 0; k < 4; ++k) {
                    if (nx[k] < 0 || nx[k] >= width || ny[k] < 0 || ny[k] >= height) continue;
                    const std::int32_t q = ny[k] * width + nx[k];
                    if (mask[q] && label[q] < 0) {
                        label[q] = id;
                        stack.push_back(q);
                    }
                }
            }
            comps.push_back(comp);
        }
    }
    if (labels != nullptr) *labels = std::move(label);
    return comps;
}

}  // namespace solis::kernels
