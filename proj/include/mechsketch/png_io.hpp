#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mechsketch/image.hpp"

namespace mechsketch {

/// 1-bit grayscale PNG; mask bit 1 (ink) is written black, 0 white.
void write_png_mask(const std::string& path, const Mask& mask);

/// 8-bit grayscale PNG from an ink image in [0,1]; ink 1 maps to black.
void write_png_gray(const std::string& path, const ImageD& ink);

/// 8-bit RGB PNG. rgb is row-major, 3 bytes per pixel.
void write_png_rgb(const std::string& path, int width, int height, const std::vector<std::uint8_t>& rgb);

/// Reads any grayscale/palette/RGB PNG and reduces it to an ink mask:
/// a pixel is ink when its luma is below 128 (dark marks on light paper).
Mask read_png_mask(const std::string& path);

}  // namespace mechsketch
