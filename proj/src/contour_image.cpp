#include "mechsketch/contour_image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mechsketch/errors.hpp"

namespace mechsketch {

size_t ContourImage::ink_count() const {
    size_t c = 0;
    for (auto p : pixels) c += p != 0;
    return c;
}

Mask ContourImage::mask() const {
    Mask m(width, height);
    m.data = pixels;
    return m;
}

ImageD ContourImage::to_gray() const {
    ImageD img(width, height);
    for (size_t i = 0; i < pixels.size(); ++i) img.data[i] = pixels[i] ? 1.0 : 0.0;
    return img;
}

namespace {

double point_segment_dist2(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double len2 = ab.norm2();
    double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    Vec2 q = a + ab * t;
    return (p - q).norm2();
}

void stamp_segment(ContourImage& img, const Vec2& a, const Vec2& b) {
    // 1 px stroke: anti-aliased coverage clamp(1 - d, 0, 1) thresholded at 0.5
    // inks exactly the pixels whose center is within 0.5 px of the segment.
    constexpr double kHalfWidth = 0.5;
    int x0 = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - kHalfWidth - 1)));
    int x1 = std::min(img.width - 1, static_cast<int>(std::ceil(std::max(a.x, b.x) + kHalfWidth + 1)));
    int y0 = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - kHalfWidth - 1)));
    int y1 = std::min(img.height - 1, static_cast<int>(std::ceil(std::max(a.y, b.y) + kHalfWidth + 1)));
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) {
            Vec2 center{x + 0.5, y + 0.5};
            if (point_segment_dist2(center, a, b) <= kHalfWidth * kHalfWidth) img.at(x, y) = 1;
        }
}

}  // namespace

ContourImage render_contour_image(const std::vector<Polyline2>& polylines,
                                  const RenderParams& params, const Viewpoint& source) {
    bool any = false;
    Bbox2 bbox;
    for (const auto& line : polylines) {
        if (line.points.size() >= 2) any = true;
        for (const auto& p : line.points) bbox.extend(p);
    }
    if (!any) throw InputError("render_contour_image: no polyline with >= 2 points");

    double extent = std::max(bbox.width(), bbox.height());
    if (!(extent > 0.0)) throw InputError("render_contour_image: zero-extent bounding box");

    // Geometry spans canvas - 2*margin - 1 so the 1 px stroke extends the ink
    // bounding box to exactly canvas - 2*margin pixels.
    double target = params.canvas - 2.0 * params.margin - 1.0;
    double scale = target / extent;
    Vec2 center = bbox.center();
    double half = params.canvas * 0.5;
    auto map = [&](const Vec2& p) -> Vec2 {
        return {half + (p.x - center.x) * scale,
                half - (p.y - center.y) * scale};  // view y up -> raster y down
    };

    ContourImage img;
    img.width = img.height = params.canvas;
    img.pixels.assign(static_cast<size_t>(params.canvas) * params.canvas, 0);
    img.source_viewpoint = source;
    for (const auto& line : polylines) {
        if (line.points.size() < 2) continue;
        for (size_t i = 0; i + 1 < line.points.size(); ++i)
            stamp_segment(img, map(line.points[i]), map(line.points[i + 1]));
        if (line.closed) stamp_segment(img, map(line.points.back()), map(line.points.front()));
    }
    return img;
}

std::uint64_t perceptual_hash(const ContourImage& image) {
    // density over 9 columns x 8 rows, fractional-width columns assigned by floor
    constexpr int kCols = 9, kRows = 8;
    double sum[kRows][kCols] = {};
    double area[kRows][kCols] = {};
    for (int y = 0; y < image.height; ++y) {
        int r = y * kRows / image.height;
        for (int x = 0; x < image.width; ++x) {
            int c = x * kCols / image.width;
            sum[r][c] += image.at(x, y);
            area[r][c] += 1.0;
        }
    }
    std::uint64_t hash = 0;
    for (int r = 0; r < kRows; ++r)
        for (int c = 0; c + 1 < kCols; ++c) {
            double d0 = sum[r][c] / area[r][c];
            double d1 = sum[r][c + 1] / area[r][c + 1];
            if (d0 > d1) hash |= 1ULL << (r * 8 + c);
        }
    return hash;
}

int hamming_distance(std::uint64_t a, std::uint64_t b) {
    return static_cast<int>(__builtin_popcountll(a ^ b));
}

std::vector<int> dedup_indices(const std::vector<ContourImage>& images, int threshold) {
    if (threshold < 0 || threshold > 64) throw InputError("dedup threshold must be in [0, 64]");
    std::vector<int> kept;
    std::vector<std::uint64_t> kept_hashes;
    for (size_t i = 0; i < images.size(); ++i) {
        std::uint64_t h = perceptual_hash(images[i]);
        bool duplicate = false;
        for (auto kh : kept_hashes)
            if (hamming_distance(h, kh) <= threshold) {
                duplicate = true;
                break;
            }
        if (!duplicate) {
            kept.push_back(static_cast<int>(i));
            kept_hashes.push_back(h);
        }
    }
    return kept;
}

std::vector<ContourImage> dedup(const std::vector<ContourImage>& images, int threshold) {
    std::vector<ContourImage> out;
    for (int i : dedup_indices(images, threshold)) out.push_back(images[i]);
    return out;
}

int count_ink_components(const ContourImage& image) {
    std::vector<std::uint8_t> seen(image.pixels.size(), 0);
    std::vector<int> stack;
    int components = 0;
    for (int y = 0; y < image.height; ++y)
        for (int x = 0; x < image.width; ++x) {
            size_t idx = static_cast<size_t>(y) * image.width + x;
            if (!image.pixels[idx] || seen[idx]) continue;
            ++components;
            seen[idx] = 1;
            stack.assign(1, static_cast<int>(idx));
            while (!stack.empty()) {
                int cur = stack.back();
                stack.pop_back();
                int cx = cur % image.width, cy = cur / image.width;
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        int nx = cx + dx, ny = cy + dy;
                        if (nx < 0 || ny < 0 || nx >= image.width || ny >= image.height) continue;
                        size_t nidx = static_cast<size_t>(ny) * image.width + nx;
                        if (image.pixels[nidx] && !seen[nidx]) {
                            seen[nidx] = 1;
                            stack.push_back(static_cast<int>(nidx));
                        }
                    }
            }
        }
    return components;
}

double complexity_score(const ContourImage& image) {
    size_t ink = image.ink_count();
    if (ink == 0) return 0.0;

    double ink_fraction = static_cast<double>(ink) / (static_cast<double>(image.width) * image.height);
    int components = count_ink_components(image);

    // entropy (bits) of the 8x8 cell ink-density histogram
    constexpr int kGrid = 8;
    double cells[kGrid][kGrid] = {};
    for (int y = 0; y < image.height; ++y) {
        int r = y * kGrid / image.height;
        for (int x = 0; x < image.width; ++x)
            cells[r][x * kGrid / image.width] += image.at(x, y);
    }
    double total = 0.0;
    for (auto& row : cells)
        for (double c : row) total += c;
    double entropy = 0.0;
    for (auto& row : cells)
        for (double c : row)
            if (c > 0.0) {
                double q = c / total;
                entropy -= q * std::log2(q);
            }

    return ink_fraction * (1.0 + components) * (1.0 + entropy);
}

std::vector<int> select_view_indices(const std::vector<ContourImage>& images, int n) {
    if (n < 1) throw InputError("select_views: N must be >= 1");
    std::vector<int> order(images.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> scores(images.size());
    std::vector<int> canon(images.size());
    for (size_t i = 0; i < images.size(); ++i) {
        scores[i] = complexity_score(images[i]);
        int c = canonical_index(images[i].source_viewpoint);
        canon[i] = c >= 0 ? c : static_cast<int>(i) + 26;
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return canon[a] < canon[b];
    });
    if (order.size() > static_cast<size_t>(n)) order.resize(n);
    return order;
}

std::vector<ContourImage> select_views(const std::vector<ContourImage>& images, int n) {
    std::vector<ContourImage> out;
    for (int i : select_view_indices(images, n)) out.push_back(images[i]);
    return out;
}

}  // namespace mechsketch
