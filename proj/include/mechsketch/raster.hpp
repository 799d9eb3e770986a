#pragma once

#include <array>
#include <vector>

#include "mechsketch/image.hpp"
#include "mechsketch/stroke.hpp"

namespace mechsketch {

enum class CompositeMode {
    SoftOver,  // ink = 1 - prod(1 - coverage); smooth in every control point
    Max        // hard nearest-sample distance, max over strokes; preview only
};

struct RasterParams {
    double tau = 1.0;            // softness in px; also the soft-min temperature
    int samples_per_curve = 32;  // S
    CompositeMode composite = CompositeMode::SoftOver;

    void validate() const;
};

/// Adjoints, one 8-vector per stroke: d<adjoint, ink>/d(x1,y1,...,x4,y4).
struct GradientSet {
    std::vector<StrokeVec> per_stroke;

    bool all_finite() const;
};

/// Soft stroke raster on the sketch canvas. Each stroke is sampled at S curve
/// points; per pixel the squared distance to the stroke is a softmax-weighted
/// soft minimum over samples (temperature tau, px^2), and coverage is
/// exp(-d2 / (2 (tau + width/2)^2)). Output values lie in [0, 1].
ImageD rasterize(const Sketch& sketch, const RasterParams& params);

/// Gradient of <adjoint, rasterize(sketch)> with respect to all control
/// points, via the chain rule through soft-min, coverage and the composite.
/// Only valid for the SoftOver composite.
GradientSet rasterize_backward(const Sketch& sketch, const RasterParams& params,
                               const ImageD& adjoint);

}  // namespace mechsketch
