#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "mechsketch/geometry.hpp"

namespace mechsketch {

/// One stroke flattened to (x1,y1,...,x4,y4) in normalized coordinates.
using StrokeVec = std::array<double, 8>;

/// Cubic Bezier stroke. Control points live in the unit square (origin
/// top-left, y down) with +/-0.25 slack for optimizer excursions.
struct Stroke {
    std::array<Vec2, 4> points;
    double width = 1.5;  // px on the 224 canvas

    void validate() const;  // throws InputError on violated bounds
};

struct Sketch {
    std::vector<Stroke> strokes;
    int canvas = 224;

    void validate() const;
    size_t size() const { return strokes.size(); }
};

/// Ordered intermediate snapshots from one optimization run.
struct GuidanceTrace {
    std::vector<Sketch> snapshots;
    std::vector<int> step_indices;  // strictly increasing
};

/// Cubic Bernstein evaluation. t must lie in [0, 1].
Vec2 bezier_point(const Stroke& stroke, double t);

/// Strokes as 8-vectors, order preserved. Width is not part of the vector.
std::vector<StrokeVec> flatten(const Sketch& sketch);

/// Inverse of flatten; data length must be divisible by 8.
Sketch unflatten(std::span<const double> data, double width, int canvas = 224);
Sketch unflatten(const std::vector<StrokeVec>& vectors, double width, int canvas = 224);

/// SVG 1.1 document: one cubic path per stroke in canvas coordinates
/// (3 decimal places), black on a white background rect.
std::string to_svg(const Sketch& sketch);

}  // namespace mechsketch
