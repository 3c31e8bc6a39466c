#pragma once

#include <cstdint>
#include <vector>

#include "solis/util/errors.hpp"

namespace solis {

// One RGB camera frame (or crop). 8-bit, row-major, interleaved channels.
struct ImageRGB {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // height * width * 3

    ImageRGB() = default;
    ImageRGB(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, fill) {
        if (w < 1 || h < 1) throw Error("ImageRGB: width and height must be >= 1");
    }

    bool valid() const {
        return width >= 1 && height >= 1 &&
               data.size() == static_cast<std::size_t>(width) * height * 3;
    }

    std::size_t offset(int y, int x) const {
        return (static_cast<std::size_t>(y) * width + x) * 3;
    }

    std::uint8_t at(int y, int x, int c) const { return data[offset(y, x) + c]; }
    std::uint8_t& at(int y, int x, int c) { return data[offset(y, x) + c]; }

    void set(int y, int x, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        std::size_t o = offset(y, x);
        data[o] = r;
        data[o + 1] = g;
        data[o + 2] = b;
    }

    bool operator==(const ImageRGB& o) const {
        return width == o.width && height == o.height && data == o.data;
    }
};

}  // namespace solis
