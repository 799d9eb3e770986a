#pragma once

#include <cstdint>
#include <vector>

namespace mechsketch {

/// Grayscale double image, row-major, origin top-left. Values are whatever the
/// producer defines; the rasterizer emits ink in [0,1] with 1 = full ink.
struct ImageD {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    ImageD() = default;
    ImageD(int w, int h, double fill = 0.0) : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

    double& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
    size_t size() const { return data.size(); }
    bool same_shape(const ImageD& o) const { return width == o.width && height == o.height; }
};

/// Binary mask, row-major, 1 = set.
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    Mask() = default;
    Mask(int w, int h, std::uint8_t fill = 0) : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

    std::uint8_t& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
    size_t count() const {
        size_t c = 0;
        for (auto v : data) c += v != 0;
        return c;
    }
};

}  // namespace mechsketch
