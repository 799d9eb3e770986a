#pragma once

#include <array>
#include <string>
#include <vector>

#include "mechsketch/geometry.hpp"

namespace mechsketch {

enum class ViewKind { Face, Edge, Corner };

std::string to_string(ViewKind kind);

struct Viewpoint {
    Vec3 direction;                    // unit vector toward the camera
    Vec3 up;                           // unit vector, orthogonal to direction
    ViewKind kind = ViewKind::Face;
    std::array<int, 3> lattice{0, 0, 0};  // the {-1,0,1}^3 triple behind direction
};

/// The 26 direction classes of a cube around the object: 6 face centers,
/// 12 edge midpoints, 8 corners. Order is Face, Edge, Corner, each block
/// sorted lexicographically by the integer triple.
///
/// Up vectors are chosen so that views related by a cube symmetry project the
/// object to identically oriented images (face: world axis; edge: the zero
/// axis of the triple; corner: world z signed by the direction's z).
std::vector<Viewpoint> canonical_viewpoints();

/// Index of a viewpoint in canonical_viewpoints() order, or -1 when the
/// direction is not one of the 26 lattice directions.
int canonical_index(const Viewpoint& view);

}  // namespace mechsketch
