#pragma once

#include <vector>

#include "mechsketch/geometry.hpp"
#include "mechsketch/mesh.hpp"
#include "mechsketch/viewpoint.hpp"

namespace mechsketch {

/// Open or closed 2D polyline in view-plane coordinates (y up).
struct Polyline2 {
    std::vector<Vec2> points;
    bool closed = false;
};

struct ContourExtractParams {
    int depth_buffer_size = 1024;   // square depth buffer per view
    int samples_per_edge = 64;      // visibility samples along each candidate edge
    double depth_bias_scale = 1e-4; // bias = scale x scene diagonal
    double sharp_angle_deg = 30.0;  // dihedral threshold for feature edges
};

/// Projects the mesh orthographically along -view.direction and returns the
/// visible parts of silhouette, boundary and sharp edges as 2D polylines.
/// Visibility is sampled against a private depth buffer rendered from the
/// same view. Fully visible edges sharing endpoints are chained into longer
/// polylines (closed where the chain forms a cycle).
std::vector<Polyline2> extract_contours(const TriangleMesh& mesh, const Viewpoint& view,
                                        const ContourExtractParams& params = {});

}  // namespace mechsketch
