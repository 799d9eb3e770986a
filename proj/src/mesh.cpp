#include "mechsketch/mesh.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "mechsketch/errors.hpp"

namespace mechsketch {

Vec3 TriangleMesh::bbox_min() const {
    Vec3 m{1e300, 1e300, 1e300};
    for (const auto& v : vertices) {
        m.x = std::min(m.x, v.x);
        m.y = std::min(m.y, v.y);
        m.z = std::min(m.z, v.z);
    }
    return m;
}

Vec3 TriangleMesh::bbox_max() const {
    Vec3 m{-1e300, -1e300, -1e300};
    for (const auto& v : vertices) {
        m.x = std::max(m.x, v.x);
        m.y = std::max(m.y, v.y);
        m.z = std::max(m.z, v.z);
    }
    return m;
}

double TriangleMesh::bbox_diagonal() const {
    if (vertices.empty()) return 0.0;
    return (bbox_max() - bbox_min()).norm();
}

MeshLoadResult finalize_mesh(std::vector<Vec3> vertices,
                             std::vector<std::array<std::uint32_t, 3>> triangles,
                             std::size_t raw_vertices) {
    MeshLoadResult result;
    result.raw_vertices = raw_vertices;
    TriangleMesh& mesh = result.mesh;
    mesh.vertices = std::move(vertices);

    for (const auto& tri : triangles) {
        for (auto idx : tri)
            if (idx >= mesh.vertices.size()) throw InputError("face index out of range");
        const Vec3& a = mesh.vertices[tri[0]];
        const Vec3& b = mesh.vertices[tri[1]];
        const Vec3& c = mesh.vertices[tri[2]];
        Vec3 n = (b - a).cross(c - a);
        double area = 0.5 * n.norm();
        if (!(area > 1e-12)) {
            ++result.dropped_triangles;
            continue;
        }
        mesh.triangles.push_back(tri);
        mesh.normals.push_back(n.normalized());
    }

    if (mesh.triangles.empty()) throw InputError("empty mesh: no valid triangles after validation");
    if (mesh.vertices.size() < 4) throw InputError("mesh has fewer than 4 vertices");
    return result;
}

namespace {

// Welds raw triangle soup vertices on a quantized grid.
struct VertexWelder {
    double cell;
    std::map<std::tuple<long long, long long, long long>, std::vector<std::uint32_t>> grid;
    std::vector<Vec3> unique;

    explicit VertexWelder(double tolerance) : cell(std::max(tolerance, 1e-300)) {}

    std::uint32_t add(const Vec3& p) {
        long long gx = static_cast<long long>(std::floor(p.x / cell));
        long long gy = static_cast<long long>(std::floor(p.y / cell));
        long long gz = static_cast<long long>(std::floor(p.z / cell));
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy)
                for (long long dz = -1; dz <= 1; ++dz) {
                    auto it = grid.find({gx + dx, gy + dy, gz + dz});
                    if (it == grid.end()) continue;
                    for (auto idx : it->second)
                        if ((unique[idx] - p).norm() <= cell) return idx;
                }
        auto idx = static_cast<std::uint32_t>(unique.size());
        unique.push_back(p);
        grid[{gx, gy, gz}].push_back(idx);
        return idx;
    }
};

MeshLoadResult weld_soup(const std::vector<Vec3>& soup) {
    if (soup.empty()) throw InputError("empty mesh: no facets found");
    Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
    for (const auto& p : soup) {
        lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
    }
    double tol = 1e-6 * (hi - lo).norm();
    VertexWelder welder(tol);
    std::vector<std::array<std::uint32_t, 3>> triangles;
    for (size_t i = 0; i + 2 < soup.size(); i += 3)
        triangles.push_back({welder.add(soup[i]), welder.add(soup[i + 1]), welder.add(soup[i + 2])});
    return finalize_mesh(std::move(welder.unique), std::move(triangles), soup.size());
}

MeshLoadResult load_stl_ascii(const std::string& text) {
    std::istringstream in(text);
    std::vector<Vec3> soup;
    std::string tok;
    while (in >> tok) {
        if (tok == "vertex") {
            Vec3 p;
            if (!(in >> p.x >> p.y >> p.z)) throw InputError("malformed ASCII STL vertex");
            soup.push_back(p);
        }
    }
    if (soup.size() % 3 != 0) throw InputError("ASCII STL vertex count not a multiple of 3");
    return weld_soup(soup);
}

MeshLoadResult load_stl_binary(const std::string& bytes) {
    if (bytes.size() < 84) throw InputError("binary STL truncated header");
    std::uint32_t count;
    std::memcpy(&count, bytes.data() + 80, 4);
    size_t expected = 84 + static_cast<size_t>(count) * 50;
    if (bytes.size() < expected) throw InputError("binary STL truncated facet data");
    std::vector<Vec3> soup;
    soup.reserve(static_cast<size_t>(count) * 3);
    for (std::uint32_t i = 0; i < count; ++i) {
        const char* rec = bytes.data() + 84 + static_cast<size_t>(i) * 50;
        for (int v = 0; v < 3; ++v) {
            float c[3];
            std::memcpy(c, rec + 12 + v * 12, 12);
            soup.push_back({c[0], c[1], c[2]});
        }
    }
    return weld_soup(soup);
}

MeshLoadResult load_obj(const std::string& text) {
    std::istringstream in(text);
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint32_t, 3>> triangles;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            Vec3 p;
            if (!(ls >> p.x >> p.y >> p.z)) throw InputError("malformed OBJ vertex line");
            vertices.push_back(p);
        } else if (tag == "f") {
            std::vector<std::uint32_t> face;
            std::string ref;
            while (ls >> ref) {
                // "i", "i/t", "i//n", "i/t/n" — only the vertex index matters here
                size_t slash = ref.find('/');
                long idx = std::stol(ref.substr(0, slash));
                if (idx < 0) idx = static_cast<long>(vertices.size()) + idx + 1;
                if (idx <= 0) throw InputError("OBJ face index out of range");
                face.push_back(static_cast<std::uint32_t>(idx - 1));
            }
            if (face.size() < 3) throw InputError("OBJ face with fewer than 3 vertices");
            for (size_t k = 1; k + 1 < face.size(); ++k)
                triangles.push_back({face[0], face[k], face[k + 1]});
        }
    }
    return finalize_mesh(std::move(vertices), std::move(triangles), vertices.size());
}

std::string ext_lower(const std::string& path) {
    auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return {};
    std::string e = path.substr(dot + 1);
    std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
    return e;
}

bool looks_ascii_stl(const std::string& bytes) {
    size_t i = 0;
    while (i < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[i]))) ++i;
    if (bytes.compare(i, 5, "solid") != 0) return false;
    // Binary files sometimes start with "solid" too; require a "facet" keyword.
    return bytes.find("facet") != std::string::npos;
}

}  // namespace

MeshLoadResult load_mesh(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open mesh file: " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::string ext = ext_lower(path);
    if (ext == "obj") return load_obj(bytes);
    if (ext == "stl" || ext.empty())
        return looks_ascii_stl(bytes) ? load_stl_ascii(bytes) : load_stl_binary(bytes);
    throw InputError("unsupported mesh format: ." + ext + " (expected .stl or .obj)");
}

}  // namespace mechsketch
