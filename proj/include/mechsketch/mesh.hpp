#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "mechsketch/geometry.hpp"

namespace mechsketch {

struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint32_t, 3>> triangles;
    std::vector<Vec3> normals;  // per-triangle unit normals, recomputed from geometry

    Vec3 bbox_min() const;
    Vec3 bbox_max() const;
    double bbox_diagonal() const;
};

struct MeshLoadResult {
    TriangleMesh mesh;
    std::size_t dropped_triangles = 0;  // degenerate faces removed during validation
    std::size_t raw_vertices = 0;       // vertex count before welding
};

/// Loads STL (binary or ASCII, detected from content) or OBJ (by extension).
/// STL vertices are welded with tolerance 1e-6 x bbox diagonal. Triangles with
/// area <= 1e-12 in model units are dropped and counted in the result.
/// Throws InputError on unreadable files, unsupported formats, or a mesh that
/// is empty after validation.
MeshLoadResult load_mesh(const std::string& path);

/// Validation shared by all loaders: drops degenerate triangles, recomputes
/// unit normals, enforces index bounds and the >= 4 vertex minimum.
MeshLoadResult finalize_mesh(std::vector<Vec3> vertices,
                             std::vector<std::array<std::uint32_t, 3>> triangles,
                             std::size_t raw_vertices);

}  // namespace mechsketch
