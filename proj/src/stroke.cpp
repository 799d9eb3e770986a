#include "mechsketch/stroke.hpp"

#include <cmath>
#include <cstdio>

#include "mechsketch/errors.hpp"

namespace mechsketch {

void Stroke::validate() const {
    for (const auto& p : points) {
        if (!(p.x >= -0.25 && p.x <= 1.25 && p.y >= -0.25 && p.y <= 1.25))
            throw InputError("stroke control point outside [-0.25, 1.25]");
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw NumericError("stroke control point is not finite");
    }
    if (!(width > 0.0 && width <= 8.0)) throw InputError("stroke width outside (0, 8]");
}

void Sketch::validate() const {
    if (strokes.empty() || strokes.size() > 64)
        throw InputError("sketch must hold between 1 and 64 strokes");
    if (canvas != 224) throw InputError("sketch canvas must be 224");
    for (const auto& s : strokes) s.validate();
}

Vec2 bezier_point(const Stroke& stroke, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw InputError("bezier parameter t outside [0, 1]");
    double u = 1.0 - t;
    double b0 = u * u * u;
    double b1 = 3.0 * u * u * t;
    double b2 = 3.0 * u * t * t;
    double b3 = t * t * t;
    return stroke.points[0] * b0 + stroke.points[1] * b1 + stroke.points[2] * b2 +
           stroke.points[3] * b3;
}

std::vector<StrokeVec> flatten(const Sketch& sketch) {
    std::vector<StrokeVec> out;
    out.reserve(sketch.strokes.size());
    for (const auto& s : sketch.strokes)
        out.push_back({s.points[0].x, s.points[0].y, s.points[1].x, s.points[1].y,
                       s.points[2].x, s.points[2].y, s.points[3].x, s.points[3].y});
    return out;
}

Sketch unflatten(std::span<const double> data, double width, int canvas) {
    if (data.size() % 8 != 0) throw InputError("unflatten: data length not divisible by 8");
    Sketch sketch;
    sketch.canvas = canvas;
    for (size_t i = 0; i < data.size(); i += 8) {
        Stroke s;
        for (int p = 0; p < 4; ++p) s.points[p] = {data[i + 2 * p], data[i + 2 * p + 1]};
        s.width = width;
        sketch.strokes.push_back(s);
    }
    return sketch;
}

Sketch unflatten(const std::vector<StrokeVec>& vectors, double width, int canvas) {
    Sketch sketch;
    sketch.canvas = canvas;
    for (const auto& v : vectors) {
        Stroke s;
        for (int p = 0; p < 4; ++p) s.points[p] = {v[2 * p], v[2 * p + 1]};
        s.width = width;
        sketch.strokes.push_back(s);
    }
    return sketch;
}

std::string to_svg(const Sketch& sketch) {
    char buf[256];
    std::string svg;
    int c = sketch.canvas;
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                  "width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                  c, c, c, c);
    svg += buf;
    std::snprintf(buf, sizeof(buf), "<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n", c, c);
    svg += buf;
    for (const auto& s : sketch.strokes) {
        auto px = [c](const Vec2& p) { return Vec2{p.x * c, p.y * c}; };
        Vec2 p1 = px(s.points[0]), p2 = px(s.points[1]), p3 = px(s.points[2]), p4 = px(s.points[3]);
        std::snprintf(buf, sizeof(buf),
                      "<path d=\"M %.3f %.3f C %.3f %.3f, %.3f %.3f, %.3f %.3f\" "
                      "fill=\"none\" stroke=\"black\" stroke-width=\"%.3f\" "
                      "stroke-linecap=\"round\"/>\n",
                      p1.x, p1.y, p2.x, p2.y, p3.x, p3.y, p4.x, p4.y, s.width);
        svg += buf;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace mechsketch
