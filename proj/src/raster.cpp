#include "mechsketch/raster.hpp"

#include <algorithm>
#include <cmath>

#include "mechsketch/errors.hpp"

namespace mechsketch {

void RasterParams::validate() const {
    if (!(tau >= 0.25 && tau <= 8.0)) throw InputError("raster tau outside [0.25, 8]");
    if (samples_per_curve < 8 || samples_per_curve > 256)
        throw InputError("raster samples_per_curve outside [8, 256]");
}

bool GradientSet::all_finite() const {
    for (const auto& g : per_stroke)
        for (double v : g)
            if (!std::isfinite(v)) return false;
    return true;
}

namespace {

// Beyond this many sigmas the Gaussian coverage is < 3e-16 and skipped.
constexpr double kCutoffSigmas = 8.5;

struct StrokeSamples {
    std::vector<Vec2> pos;       // sample positions in px
    std::vector<std::array<double, 4>> bernstein;
    double sigma = 0.0;
    int x0 = 0, x1 = -1, y0 = 0, y1 = -1;  // inclusive pixel bounds, empty if x1 < x0

    bool contains(int x, int y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

StrokeSamples sample_stroke(const Stroke& stroke, const RasterParams& params, int canvas) {
    StrokeSamples s;
    s.sigma = params.tau + stroke.width * 0.5;
    int n = params.samples_per_curve;
    s.pos.reserve(n);
    s.bernstein.reserve(n);
    Bbox2 bbox;
    for (int j = 0; j < n; ++j) {
        double t = static_cast<double>(j) / (n - 1);
        double u = 1.0 - t;
        std::array<double, 4> b{u * u * u, 3 * u * u * t, 3 * u * t * t, t * t * t};
        Vec2 p = stroke.points[0] * b[0] + stroke.points[1] * b[1] + stroke.points[2] * b[2] +
                 stroke.points[3] * b[3];
        p = p * static_cast<double>(canvas);
        bbox.extend(p);
        s.pos.push_back(p);
        s.bernstein.push_back(b);
    }
    double r = kCutoffSigmas * s.sigma;
    s.x0 = std::max(0, static_cast<int>(std::floor(bbox.lo.x - r - 0.5)));
    s.x1 = std::min(canvas - 1, static_cast<int>(std::ceil(bbox.hi.x + r - 0.5)));
    s.y0 = std::max(0, static_cast<int>(std::floor(bbox.lo.y - r - 0.5)));
    s.y1 = std::min(canvas - 1, static_cast<int>(std::ceil(bbox.hi.y + r - 0.5)));
    return s;
}

// Softmax-weighted soft minimum of the squared sample distances. Stays within
// [min d2, max d2], so coverage never exceeds 1. Weights are returned for the
// backward pass when requested.
double soft_min_dist2(const StrokeSamples& s, const Vec2& pixel, double tau,
                      std::vector<double>* weights, std::vector<double>* dist2) {
    size_t n = s.pos.size();
    double dmin = std::numeric_limits<double>::infinity();
    if (dist2) dist2->resize(n);
    for (size_t j = 0; j < n; ++j) {
        double d2 = (pixel - s.pos[j]).norm2();
        if (dist2) (*dist2)[j] = d2;
        dmin = std::min(dmin, d2);
    }
    double wsum = 0.0, fsum = 0.0;
    if (weights) weights->resize(n);
    for (size_t j = 0; j < n; ++j) {
        double d2 = dist2 ? (*dist2)[j] : (pixel - s.pos[j]).norm2();
        double w = std::exp(-(d2 - dmin) / tau);
        if (weights) (*weights)[j] = w;
        wsum += w;
        fsum += w * d2;
    }
    if (weights)
        for (auto& w : *weights) w /= wsum;
    return fsum / wsum;
}

double hard_min_dist2(const StrokeSamples& s, const Vec2& pixel) {
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& q : s.pos) dmin = std::min(dmin, (pixel - q).norm2());
    return dmin;
}

}  // namespace

ImageD rasterize(const Sketch& sketch, const RasterParams& params) {
    params.validate();
    sketch.validate();
    int canvas = sketch.canvas;

    if (params.composite == CompositeMode::Max) {
        ImageD ink(canvas, canvas, 0.0);
        for (const auto& stroke : sketch.strokes) {
            StrokeSamples s = sample_stroke(stroke, params, canvas);
            double inv = 1.0 / (2.0 * s.sigma * s.sigma);
            for (int y = s.y0; y <= s.y1; ++y)
                for (int x = s.x0; x <= s.x1; ++x) {
                    Vec2 pixel{x + 0.5, y + 0.5};
                    double c = std::exp(-hard_min_dist2(s, pixel) * inv);
                    ink.at(x, y) = std::max(ink.at(x, y), c);
                }
        }
        return ink;
    }

    // SoftOver: accumulate transmittance prod(1 - c) in stroke order.
    ImageD transmittance(canvas, canvas, 1.0);
    for (const auto& stroke : sketch.strokes) {
        StrokeSamples s = sample_stroke(stroke, params, canvas);
        double inv = 1.0 / (2.0 * s.sigma * s.sigma);
        for (int y = s.y0; y <= s.y1; ++y)
            for (int x = s.x0; x <= s.x1; ++x) {
                Vec2 pixel{x + 0.5, y + 0.5};
                double f = soft_min_dist2(s, pixel, params.tau, nullptr, nullptr);
                double c = std::exp(-f * inv);
                transmittance.at(x, y) *= 1.0 - c;
            }
    }
    ImageD ink(canvas, canvas);
    for (size_t i = 0; i < ink.size(); ++i) ink.data[i] = 1.0 - transmittance.data[i];
    return ink;
}

GradientSet rasterize_backward(const Sketch& sketch, const RasterParams& params,
                               const ImageD& adjoint) {
    params.validate();
    sketch.validate();
    if (params.composite != CompositeMode::SoftOver)
        throw InputError("rasterize_backward requires the SoftOver composite");
    int canvas = sketch.canvas;
    if (adjoint.width != canvas || adjoint.height != canvas)
        throw InputError("adjoint shape does not match the sketch canvas");
    for (double v : adjoint.data)
        if (!std::isfinite(v)) throw NumericError("adjoint contains non-finite values");

    size_t n = sketch.strokes.size();
    std::vector<StrokeSamples> samples;
    samples.reserve(n);
    for (const auto& stroke : sketch.strokes) samples.push_back(sample_stroke(stroke, params, canvas));

    // Forward pass again, keeping per-stroke coverage for the composite chain.
    std::vector<ImageD> coverage(n);
    ImageD transmittance(canvas, canvas, 1.0);
    for (size_t si = 0; si < n; ++si) {
        const StrokeSamples& s = samples[si];
        if (s.x1 < s.x0 || s.y1 < s.y0) continue;
        coverage[si] = ImageD(s.x1 - s.x0 + 1, s.y1 - s.y0 + 1, 0.0);
        double inv = 1.0 / (2.0 * s.sigma * s.sigma);
        for (int y = s.y0; y <= s.y1; ++y)
            for (int x = s.x0; x <= s.x1; ++x) {
                Vec2 pixel{x + 0.5, y + 0.5};
                double f = soft_min_dist2(s, pixel, params.tau, nullptr, nullptr);
                double c = std::exp(-f * inv);
                coverage[si].at(x - s.x0, y - s.y0) = c;
                transmittance.at(x, y) *= 1.0 - c;
            }
    }

    auto others_product = [&](size_t skip, int x, int y) {
        double prod = 1.0;
        for (size_t si = 0; si < n; ++si) {
            if (si == skip || !samples[si].contains(x, y)) continue;
            prod *= 1.0 - coverage[si].at(x - samples[si].x0, y - samples[si].y0);
        }
        return prod;
    };

    GradientSet grads;
    grads.per_stroke.assign(n, StrokeVec{});
    std::vector<double> w, d2;
    for (size_t si = 0; si < n; ++si) {
        const StrokeSamples& s = samples[si];
        if (s.x1 < s.x0 || s.y1 < s.y0) continue;
        double inv = 1.0 / (2.0 * s.sigma * s.sigma);
        std::vector<Vec2> sample_grad(s.pos.size(), Vec2{});
        for (int y = s.y0; y <= s.y1; ++y)
            for (int x = s.x0; x <= s.x1; ++x) {
                double a = adjoint.at(x, y);
                if (a == 0.0) continue;
                Vec2 pixel{x + 0.5, y + 0.5};
                double f = soft_min_dist2(s, pixel, params.tau, &w, &d2);
                double c = coverage[si].at(x - s.x0, y - s.y0);
                if (c < 1e-300) continue;
                double one_minus = 1.0 - c;
                double factor = one_minus > 1e-6 ? transmittance.at(x, y) / one_minus
                                                 : others_product(si, x, y);
                // d ink / d c = prod over other strokes; d c / d f = -c inv
                double coeff = a * factor * (-c * inv);
                for (size_t j = 0; j < w.size(); ++j) {
                    if (w[j] == 0.0) continue;
                    double df = w[j] * (1.0 + (f - d2[j]) / params.tau);
                    Vec2 dq = (s.pos[j] - pixel) * 2.0;
                    sample_grad[j] += dq * (coeff * df);
                }
            }
        for (size_t j = 0; j < s.pos.size(); ++j) {
            const auto& b = s.bernstein[j];
            for (int m = 0; m < 4; ++m) {
                grads.per_stroke[si][2 * m] += sample_grad[j].x * b[m] * canvas;
                grads.per_stroke[si][2 * m + 1] += sample_grad[j].y * b[m] * canvas;
            }
        }
    }
    return grads;
}

}  // namespace mechsketch
