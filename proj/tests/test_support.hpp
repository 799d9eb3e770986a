#pragma once

// Shared fixtures and independent helpers for the test suites.

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "mechsketch/geometry.hpp"
#include "mechsketch/mesh.hpp"
#include "mechsketch/stroke.hpp"

namespace testsupport {

using mechsketch::Vec2;
using mechsketch::Vec3;

/// Deterministic uniform doubles in [0,1) from a raw 64-bit generator state,
/// independent of libstdc++ distribution internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64() {
        // xorshift* generator
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545f4914f6cdd1dull;
    }
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::uint64_t state_;
};

// ---- cube fixtures ----------------------------------------------------------

/// 12 triangles of the axis-aligned unit cube [0,1]^3, outward normals.
inline std::vector<std::array<Vec3, 3>> cube_facets() {
    auto v = [](double x, double y, double z) { return Vec3{x, y, z}; };
    std::vector<std::array<Vec3, 3>> f;
    // -z
    f.push_back({v(0, 0, 0), v(0, 1, 0), v(1, 1, 0)});
    f.push_back({v(0, 0, 0), v(1, 1, 0), v(1, 0, 0)});
    // +z
    f.push_back({v(0, 0, 1), v(1, 0, 1), v(1, 1, 1)});
    f.push_back({v(0, 0, 1), v(1, 1, 1), v(0, 1, 1)});
    // -y
    f.push_back({v(0, 0, 0), v(1, 0, 0), v(1, 0, 1)});
    f.push_back({v(0, 0, 0), v(1, 0, 1), v(0, 0, 1)});
    // +y
    f.push_back({v(0, 1, 0), v(0, 1, 1), v(1, 1, 1)});
    f.push_back({v(0, 1, 0), v(1, 1, 1), v(1, 1, 0)});
    // -x
    f.push_back({v(0, 0, 0), v(0, 0, 1), v(0, 1, 1)});
    f.push_back({v(0, 0, 0), v(0, 1, 1), v(0, 1, 0)});
    // +x
    f.push_back({v(1, 0, 0), v(1, 1, 0), v(1, 1, 1)});
    f.push_back({v(1, 0, 0), v(1, 1, 1), v(1, 0, 1)});
    return f;
}

inline std::string cube_stl_ascii(double scale = 1.0) {
    std::string s = "solid cube\n";
    char buf[256];
    for (const auto& f : cube_facets()) {
        Vec3 n = (f[1] - f[0]).cross(f[2] - f[0]).normalized();
        std::snprintf(buf, sizeof(buf), "facet normal %g %g %g\n outer loop\n", n.x, n.y, n.z);
        s += buf;
        for (const auto& p : f) {
            std::snprintf(buf, sizeof(buf), "  vertex %.9g %.9g %.9g\n", p.x * scale, p.y * scale,
                          p.z * scale);
            s += buf;
        }
        s += " endloop\nendfacet\n";
    }
    s += "endsolid cube\n";
    return s;
}

inline std::string cube_stl_binary(double scale = 1.0) {
    auto facets = cube_facets();
    std::string s(80, '\0');
    std::uint32_t count = static_cast<std::uint32_t>(facets.size());
    s.append(reinterpret_cast<const char*>(&count), 4);
    for (const auto& f : facets) {
        Vec3 n = (f[1] - f[0]).cross(f[2] - f[0]).normalized();
        float rec[12] = {static_cast<float>(n.x), static_cast<float>(n.y), static_cast<float>(n.z)};
        for (int v = 0; v < 3; ++v) {
            rec[3 + v * 3] = static_cast<float>(f[v].x * scale);
            rec[4 + v * 3] = static_cast<float>(f[v].y * scale);
            rec[5 + v * 3] = static_cast<float>(f[v].z * scale);
        }
        s.append(reinterpret_cast<const char*>(rec), 48);
        s.append(2, '\0');
    }
    return s;
}

inline void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

/// UV sphere of radius 1 centered at the origin: `segments` longitudes,
/// `rings` latitude bands. All face normal deviations stay well under the
/// 30 degree sharp threshold for segments >= 24, rings >= 12.
inline mechsketch::TriangleMesh uv_sphere(int segments = 32, int rings = 16) {
    using mechsketch::TriangleMesh;
    std::vector<Vec3> verts;
    verts.push_back({0, 0, 1});  // north pole
    for (int r = 1; r < rings; ++r) {
        double theta = M_PI * r / rings;
        for (int s = 0; s < segments; ++s) {
            double phi = 2.0 * M_PI * s / segments;
            verts.push_back({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                             std::cos(theta)});
        }
    }
    verts.push_back({0, 0, -1});  // south pole
    auto ring_at = [&](int r, int s) -> std::uint32_t {
        return static_cast<std::uint32_t>(1 + (r - 1) * segments + (s % segments));
    };
    std::uint32_t south = static_cast<std::uint32_t>(verts.size() - 1);

    std::vector<std::array<std::uint32_t, 3>> tris;
    for (int s = 0; s < segments; ++s) tris.push_back({0u, ring_at(1, s), ring_at(1, s + 1)});
    for (int r = 1; r + 1 < rings; ++r)
        for (int s = 0; s < segments; ++s) {
            auto a = ring_at(r, s), b = ring_at(r, s + 1), c = ring_at(r + 1, s + 1), d = ring_at(r + 1, s);
            tris.push_back({a, d, c});
            tris.push_back({a, c, b});
        }
    for (int s = 0; s < segments; ++s)
        tris.push_back({south, ring_at(rings - 1, s + 1), ring_at(rings - 1, s)});

    return mechsketch::finalize_mesh(std::move(verts), std::move(tris), verts.size()).mesh;
}

// ---- sketch fixtures --------------------------------------------------------

/// Random sketch with compact strokes away from the canvas border.
inline mechsketch::Sketch random_sketch(Rng& rng, int stroke_count) {
    mechsketch::Sketch sketch;
    for (int i = 0; i < stroke_count; ++i) {
        mechsketch::Stroke s;
        Vec2 base{rng.uniform(0.15, 0.85), rng.uniform(0.15, 0.85)};
        s.points[0] = base;
        for (int p = 1; p < 4; ++p)
            s.points[p] = {base.x + rng.uniform(-0.08, 0.08), base.y + rng.uniform(-0.08, 0.08)};
        s.width = 1.5;
        sketch.strokes.push_back(s);
    }
    return sketch;
}

}  // namespace testsupport
