#pragma once

#include <cstdint>
#include <vector>

#include "mechsketch/contour_extract.hpp"
#include "mechsketch/image.hpp"
#include "mechsketch/viewpoint.hpp"

namespace mechsketch {

constexpr int kCanvas = 224;

/// Binary contour raster from one viewpoint. Ink = 1.
struct ContourImage {
    int width = kCanvas;
    int height = kCanvas;
    std::vector<std::uint8_t> pixels;  // row-major, 1 = ink
    Viewpoint source_viewpoint;

    std::uint8_t at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
    size_t ink_count() const;
    Mask mask() const;
    ImageD to_gray() const;  // ink pixels become 1.0
};

struct RenderParams {
    int canvas = kCanvas;
    int margin = 22;  // ink-free band on every side, in pixels
};

/// Scales and centers the polylines uniformly so the ink bounding box sits at
/// the canvas center with its larger side equal to canvas - 2*margin pixels,
/// then rasterizes 1 px wide (anti-aliased coverage thresholded at 0.5).
/// Input y points up; the raster y axis points down.
ContourImage render_contour_image(const std::vector<Polyline2>& polylines,
                                  const RenderParams& params = {},
                                  const Viewpoint& source = {});

/// 64-bit difference hash: ink density box-averaged to 9x8 cells, bit set when
/// a cell is denser than its right neighbor.
std::uint64_t perceptual_hash(const ContourImage& image);

int hamming_distance(std::uint64_t a, std::uint64_t b);

/// Greedy first-kept scan in input order; an image is dropped when its hash is
/// within `threshold` Hamming bits of an already kept image.
std::vector<ContourImage> dedup(const std::vector<ContourImage>& images, int threshold);

/// Indices variant of dedup, for callers tracking view identity.
std::vector<int> dedup_indices(const std::vector<ContourImage>& images, int threshold);

/// Deterministic information score:
/// (ink fraction) * (1 + connected ink components) * (1 + entropy of the 8x8
/// ink density histogram, bits).
double complexity_score(const ContourImage& image);

/// Top-N by complexity score, descending; ties broken by canonical viewpoint
/// order, then input order.
std::vector<ContourImage> select_views(const std::vector<ContourImage>& images, int n);
std::vector<int> select_view_indices(const std::vector<ContourImage>& images, int n);

/// 8-connected components of ink; returns the component count.
int count_ink_components(const ContourImage& image);

}  // namespace mechsketch
