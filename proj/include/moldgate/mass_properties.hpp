#pragma once

#include <stdexcept>

#include "moldgate/mesh.hpp"

namespace moldgate {

struct FacetProperties {
    double area = 0.0; // mm^2
    Vec3 centroid;     // mm
};

struct CenterOfMass {
    Vec3 point;              // mm
    double total_area = 0.0; // mm^2
};

// Half the magnitude of the cross product of the edge vectors. Collinear
// vertices yield exactly zero.
inline double facet_area(const Vec3& v1, const Vec3& v2, const Vec3& v3) {
    return 0.5 * norm(cross(v2 - v1, v3 - v1));
}

// Arithmetic mean of the three vertices.
inline Vec3 facet_centroid(const Vec3& v1, const Vec3& v2, const Vec3& v3) {
    return (v3 + v2 + v1) / 3.0;
}

inline FacetProperties facet_properties(const Vec3& v1, const Vec3& v2, const Vec3& v3) {
    return {facet_area(v1, v2, v3), facet_centroid(v1, v2, v3)};
}

// Area-weighted mean of the facet centroids, accumulated in facet index order
// so the result is deterministic. This is the shell (surface) centroid of the
// triangulation; for parts with non-uniform wall thickness it differs from the
// volumetric mass centroid, and no volume integral is attempted here.
inline CenterOfMass mesh_center_of_mass(const TriangleMesh& mesh) {
    Vec3 moment{0.0, 0.0, 0.0};
    double total = 0.0;
    for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
        const Vec3& v1 = mesh.facet_vertex(f, 0);
        const Vec3& v2 = mesh.facet_vertex(f, 1);
        const Vec3& v3 = mesh.facet_vertex(f, 2);
        const double area = facet_area(v1, v2, v3);
        moment += facet_centroid(v1, v2, v3) * area;
        total += area;
    }
    if (!(total > 0.0)) throw std::runtime_error("center of mass undefined: mesh has zero total area");
    return {moment / total, total};
}

} // namespace moldgate
