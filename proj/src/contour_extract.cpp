#include "mechsketch/contour_extract.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "mechsketch/errors.hpp"

namespace mechsketch {
namespace {

constexpr double kBackground = -std::numeric_limits<double>::infinity();

struct ViewBasis {
    Vec3 right;  // = up x direction
    Vec3 up;
    Vec3 dir;    // depth axis; larger p.dot(dir) is closer to the camera

    Vec2 project(const Vec3& p) const { return {p.dot(right), p.dot(up)}; }
    double depth(const Vec3& p) const { return p.dot(dir); }
};

struct DepthBuffer {
    int size;
    std::vector<double> z;
    Vec2 origin;   // view-plane coords of texel (0,0) center
    double scale;  // texels per view-plane unit

    DepthBuffer(int n, const Bbox2& bbox) : size(n), z(static_cast<size_t>(n) * n, kBackground) {
        double extent = std::max({bbox.width(), bbox.height(), 1e-12});
        scale = (n - 8) / extent;
        Vec2 c = bbox.center();
        origin = {c.x - (n * 0.5 - 0.5) / scale, c.y - (n * 0.5 - 0.5) / scale};
    }

    Vec2 to_texel(const Vec2& p) const { return {(p.x - origin.x) * scale, (p.y - origin.y) * scale}; }

    void rasterize_triangle(const Vec2& a, const Vec2& b, const Vec2& c,
                            double za, double zb, double zc) {
        Vec2 ta = to_texel(a), tb = to_texel(b), tc = to_texel(c);
        double area = (tb.x - ta.x) * (tc.y - ta.y) - (tb.y - ta.y) * (tc.x - ta.x);
        if (std::abs(area) < 1e-12) return;  // edge-on faces do not occlude anything extra
        int x0 = std::max(0, static_cast<int>(std::floor(std::min({ta.x, tb.x, tc.x}))));
        int x1 = std::min(size - 1, static_cast<int>(std::ceil(std::max({ta.x, tb.x, tc.x}))));
        int y0 = std::max(0, static_cast<int>(std::floor(std::min({ta.y, tb.y, tc.y}))));
        int y1 = std::min(size - 1, static_cast<int>(std::ceil(std::max({ta.y, tb.y, tc.y}))));
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x) {
                double w0 = (tb.x - ta.x) * (y - ta.y) - (tb.y - ta.y) * (x - ta.x);
                double w1 = (tc.x - tb.x) * (y - tb.y) - (tc.y - tb.y) * (x - tb.x);
                double w2 = (ta.x - tc.x) * (y - tc.y) - (ta.y - tc.y) * (x - tc.x);
                bool inside = area > 0 ? (w0 >= 0 && w1 >= 0 && w2 >= 0)
                                       : (w0 <= 0 && w1 <= 0 && w2 <= 0);
                if (!inside) continue;
                double l1 = w2 / area, l2 = w0 / area;
                double depth = za * (1.0 - l1 - l2) + zb * l1 + zc * l2;
                double& cell = z[static_cast<size_t>(y) * size + x];
                cell = std::max(cell, depth);
            }
    }

    // Most permissive depth in the 3x3 neighborhood. Silhouette samples sit on
    // depth discontinuities; comparing against the nearest texel alone would
    // reject them whenever the texel center lands on the near side.
    double min_neighborhood(const Vec2& p) const {
        Vec2 t = to_texel(p);
        int cx = static_cast<int>(std::lround(t.x));
        int cy = static_cast<int>(std::lround(t.y));
        double zmin = std::numeric_limits<double>::infinity();
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                int x = cx + dx, y = cy + dy;
                if (x < 0 || y < 0 || x >= size || y >= size) {
                    zmin = kBackground;
                    continue;
                }
                zmin = std::min(zmin, z[static_cast<size_t>(y) * size + x]);
            }
        return zmin;
    }
};

struct CandidateEdge {
    std::uint32_t v0, v1;  // v0 < v1
};

struct VisibleRun {
    std::vector<Vec2> points;
    bool spans_edge = false;  // covers the whole candidate edge, endpoints included
    std::uint32_t v0 = 0, v1 = 0;
};

std::vector<CandidateEdge> candidate_edges(const TriangleMesh& mesh, const ViewBasis& basis,
                                           double sharp_angle_deg) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> edge_tris;
    for (std::uint32_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        for (int k = 0; k < 3; ++k) {
            std::uint32_t a = tri[k], b = tri[(k + 1) % 3];
            if (a > b) std::swap(a, b);
            edge_tris[{a, b}].push_back(t);
        }
    }

    double cos_sharp = std::cos(sharp_angle_deg * M_PI / 180.0);
    std::vector<CandidateEdge> out;
    for (const auto& [key, tris] : edge_tris) {
        bool candidate = false;
        if (tris.size() != 2) {
            candidate = true;  // boundary or non-manifold
        } else {
            bool f0 = mesh.normals[tris[0]].dot(basis.dir) > 0.0;
            bool f1 = mesh.normals[tris[1]].dot(basis.dir) > 0.0;
            if (f0 != f1) candidate = true;  // silhouette
            if (mesh.normals[tris[0]].dot(mesh.normals[tris[1]]) < cos_sharp) candidate = true;
        }
        if (candidate) out.push_back({key.first, key.second});
    }
    return out;
}

// Connects fully visible edge runs that share mesh vertices into maximal
// chains, walking open paths from odd-degree vertices first, then remaining
// cycles. Everything iterates in sorted order for determinism.
std::vector<Polyline2> stitch_runs(std::vector<VisibleRun> runs) {
    std::vector<Polyline2> out;
    std::vector<size_t> full;
    for (size_t i = 0; i < runs.size(); ++i) {
        if (runs[i].spans_edge) full.push_back(i);
        else out.push_back({std::move(runs[i].points), false});
    }

    std::map<std::uint32_t, std::vector<size_t>> incident;
    for (size_t i : full) {
        incident[runs[i].v0].push_back(i);
        incident[runs[i].v1].push_back(i);
    }
    std::vector<bool> used(runs.size(), false);

    auto next_unused = [&](std::uint32_t v) -> size_t {
        for (size_t i : incident[v])
            if (!used[i]) return i;
        return static_cast<size_t>(-1);
    };
    auto walk_from = [&](std::uint32_t start) {
        Polyline2 line;
        std::uint32_t v = start;
        while (true) {
            size_t i = next_unused(v);
            if (i == static_cast<size_t>(-1)) break;
            used[i] = true;
            std::vector<Vec2> pts = runs[i].points;
            std::uint32_t w = runs[i].v1;
            if (v == runs[i].v1) {
                std::reverse(pts.begin(), pts.end());
                w = runs[i].v0;
            }
            size_t skip = line.points.empty() ? 0 : 1;  // shared junction point
            line.points.insert(line.points.end(), pts.begin() + skip, pts.end());
            v = w;
        }
        line.closed = !line.points.empty() && v == start;
        if (line.closed) line.points.pop_back();  // implicit closing segment
        if (line.points.size() >= 2) out.push_back(std::move(line));
    };

    // open chains first so cycles stay intact
    for (const auto& [v, edges] : incident) {
        size_t unused_count = 0;
        for (size_t i : edges) unused_count += !used[i];
        if (unused_count % 2 == 1) walk_from(v);
    }
    for (const auto& [v, edges] : incident) {
        (void)edges;
        while (next_unused(v) != static_cast<size_t>(-1)) walk_from(v);
    }
    return out;
}

}  // namespace

std::vector<Polyline2> extract_contours(const TriangleMesh& mesh, const Viewpoint& view,
                                        const ContourExtractParams& params) {
    ViewBasis basis{view.up.cross(view.direction), view.up, view.direction};

    auto candidates = candidate_edges(mesh, basis, params.sharp_angle_deg);
    if (candidates.empty()) throw NumericError("mesh has no candidate contour edges from this view");

    Bbox2 bbox;
    for (const auto& v : mesh.vertices) bbox.extend(basis.project(v));
    DepthBuffer zbuf(params.depth_buffer_size, bbox);
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        const Vec3 &a = mesh.vertices[tri[0]], &b = mesh.vertices[tri[1]], &c = mesh.vertices[tri[2]];
        zbuf.rasterize_triangle(basis.project(a), basis.project(b), basis.project(c),
                                basis.depth(a), basis.depth(b), basis.depth(c));
    }

    double bias = params.depth_bias_scale * mesh.bbox_diagonal();
    double min_extent = 1e-7 * std::max(bbox.width(), bbox.height());
    int samples = params.samples_per_edge;

    std::vector<VisibleRun> runs;
    for (const auto& edge : candidates) {
        const Vec3& a = mesh.vertices[edge.v0];
        const Vec3& b = mesh.vertices[edge.v1];
        VisibleRun run;
        int run_start = -1;
        auto flush = [&](int run_end) {
            if (run_start < 0) return;
            int count = run_end - run_start;
            if (count >= 2) {
                Bbox2 extent;
                for (const auto& p : run.points) extent.extend(p);
                if (std::max(extent.width(), extent.height()) > min_extent) {
                    run.spans_edge = run_start == 0 && run_end == samples;
                    run.v0 = edge.v0;
                    run.v1 = edge.v1;
                    runs.push_back(run);
                }
            }
            run.points.clear();
            run_start = -1;
        };
        for (int j = 0; j < samples; ++j) {
            double t = static_cast<double>(j) / (samples - 1);
            Vec3 p = a + (b - a) * t;
            bool visible = basis.depth(p) >= zbuf.min_neighborhood(basis.project(p)) - bias;
            if (visible) {
                if (run_start < 0) run_start = j;
                run.points.push_back(basis.project(p));
            } else {
                flush(j);
            }
        }
        flush(samples);
    }

    return stitch_runs(std::move(runs));
}

}  // namespace mechsketch
