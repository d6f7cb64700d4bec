#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "moldgate/geometry.hpp"

namespace moldgate {

struct Facet {
    std::array<std::uint32_t, 3> v{0, 0, 0}; // vertex indices
    Vec3 normal{0.0, 0.0, 0.0};              // unit normal (geometry-derived when the file's is unusable)
};

// Discrete part surface: a triangle soup in millimetres. Immutable once built;
// downstream stages only read it, so it can be shared across threads freely.
struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<Facet> facets;

    const Vec3& facet_vertex(std::size_t f, int corner) const {
        return vertices[facets[f].v[static_cast<std::size_t>(corner)]];
    }
};

// Normal from vertex winding. The file-stored normal is advisory only; the
// winding is what the area/centroid math sees, so it is the authority.
inline Vec3 geometric_normal(const Vec3& v1, const Vec3& v2, const Vec3& v3) {
    return normalized(cross(v2 - v1, v3 - v1));
}

inline Aabb bounding_box(const TriangleMesh& mesh) {
    if (mesh.vertices.empty()) throw std::runtime_error("bounding_box: empty mesh");
    Aabb box;
    for (const Vec3& p : mesh.vertices) box.expand(p);
    return box;
}

inline Aabb facet_bounds(const TriangleMesh& mesh, std::size_t f) {
    Aabb box;
    box.expand(mesh.facet_vertex(f, 0));
    box.expand(mesh.facet_vertex(f, 1));
    box.expand(mesh.facet_vertex(f, 2));
    return box;
}

} // namespace moldgate
