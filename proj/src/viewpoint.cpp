#include "mechsketch/viewpoint.hpp"

#include <cmath>
#include <cstdlib>

namespace mechsketch {

std::string to_string(ViewKind kind) {
    switch (kind) {
        case ViewKind::Face: return "face";
        case ViewKind::Edge: return "edge";
        case ViewKind::Corner: return "corner";
    }
    return "?";
}

namespace {

Vec3 up_for(const std::array<int, 3>& t, const Vec3& dir, ViewKind kind) {
    switch (kind) {
        case ViewKind::Face:
            return t[2] != 0 ? Vec3{0, 1, 0} : Vec3{0, 0, 1};
        case ViewKind::Edge: {
            // the axis whose component is zero
            if (t[0] == 0) return {1, 0, 0};
            if (t[1] == 0) return {0, 1, 0};
            return {0, 0, 1};
        }
        case ViewKind::Corner: {
            Vec3 ref{0, 0, t[2] > 0 ? 1.0 : -1.0};
            return (ref - dir * ref.dot(dir)).normalized();
        }
    }
    return {0, 0, 1};
}

}  // namespace

std::vector<Viewpoint> canonical_viewpoints() {
    std::vector<std::array<int, 3>> faces, edges, corners;
    for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y)
            for (int z = -1; z <= 1; ++z) {
                int nz = std::abs(x) + std::abs(y) + std::abs(z);
                if (nz == 1) faces.push_back({x, y, z});
                else if (nz == 2) edges.push_back({x, y, z});
                else if (nz == 3) corners.push_back({x, y, z});
            }
    // the x/y/z loops already emit each block in lexicographic order

    std::vector<Viewpoint> views;
    views.reserve(26);
    auto emit = [&views](const std::array<int, 3>& t, ViewKind kind) {
        Vec3 dir = Vec3{static_cast<double>(t[0]), static_cast<double>(t[1]), static_cast<double>(t[2])}.normalized();
        views.push_back({dir, up_for(t, dir, kind), kind, t});
    };
    for (const auto& t : faces) emit(t, ViewKind::Face);
    for (const auto& t : edges) emit(t, ViewKind::Edge);
    for (const auto& t : corners) emit(t, ViewKind::Corner);
    return views;
}

int canonical_index(const Viewpoint& view) {
    static const std::vector<Viewpoint> all = canonical_viewpoints();
    for (size_t i = 0; i < all.size(); ++i)
        if (all[i].lattice == view.lattice && view.lattice != std::array<int, 3>{0, 0, 0})
            return static_cast<int>(i);
    return -1;
}

}  // namespace mechsketch
