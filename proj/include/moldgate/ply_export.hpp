#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "moldgate/gateplan.hpp"
#include "moldgate/mesh.hpp"

namespace moldgate {

namespace detail {

struct Rgb {
    std::uint8_t r, g, b;
};

inline constexpr Rgb kPartColor{200, 200, 200};
inline constexpr Rgb kMarkerColor{230, 40, 40};

// Icosahedron subdivided once: 42 vertices, 80 facets. Midpoints are pushed
// onto the sphere; the vertex set is antipodally symmetric, so its mean is the
// center.
inline TriangleMesh icosphere(const Vec3& center, double radius) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> verts = {
        {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1},
    };
    for (Vec3& v : verts) v = normalized(v);
    std::vector<std::array<std::uint32_t, 3>> faces = {
        {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
        {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
        {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1},
    };

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> midpoints;
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
        const auto key = std::minmax(a, b);
        auto it = midpoints.find(key);
        if (it != midpoints.end()) return it->second;
        const std::uint32_t idx = static_cast<std::uint32_t>(verts.size());
        verts.push_back(normalized((verts[a] + verts[b]) * 0.5));
        midpoints.emplace(key, idx);
        return idx;
    };

    std::vector<std::array<std::uint32_t, 3>> refined;
    refined.reserve(faces.size() * 4);
    for (const auto& f : faces) {
        const std::uint32_t ab = midpoint(f[0], f[1]);
        const std::uint32_t bc = midpoint(f[1], f[2]);
        const std::uint32_t ca = midpoint(f[2], f[0]);
        refined.push_back({f[0], ab, ca});
        refined.push_back({f[1], bc, ab});
        refined.push_back({f[2], ca, bc});
        refined.push_back({ab, bc, ca});
    }

    TriangleMesh sphere;
    sphere.vertices.reserve(verts.size());
    for (const Vec3& v : verts) sphere.vertices.push_back(center + v * radius);
    sphere.facets.reserve(refined.size());
    for (const auto& f : refined) {
        sphere.facets.push_back(Facet{{f[0], f[1], f[2]},
                                      geometric_normal(sphere.vertices[f[0]], sphere.vertices[f[1]],
                                                       sphere.vertices[f[2]])});
    }
    return sphere;
}

inline void append_f32le(std::string& out, float f) {
    static_assert(sizeof(float) == 4);
    std::uint32_t u;
    std::memcpy(&u, &f, 4);
    if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap32(u);
    char b[4];
    std::memcpy(b, &u, 4);
    out.append(b, 4);
}

inline void append_i32le(std::string& out, std::int32_t i) {
    std::uint32_t u = static_cast<std::uint32_t>(i);
    if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap32(u);
    char b[4];
    std::memcpy(b, &u, 4);
    out.append(b, 4);
}

inline void append_vertex(std::string& out, const Vec3& p, Rgb color) {
    append_f32le(out, static_cast<float>(p.x));
    append_f32le(out, static_cast<float>(p.y));
    append_f32le(out, static_cast<float>(p.z));
    out.push_back(static_cast<char>(color.r));
    out.push_back(static_cast<char>(color.g));
    out.push_back(static_cast<char>(color.b));
}

} // namespace detail

// Binary little-endian PLY of the part plus a gate marker: an icosphere of
// radius R_gate at the chosen injection point, colored for viewers without
// any annotation support. Refuses infeasible plans.
inline std::string export_marked_geometry(const TriangleMesh& mesh, const GatePlan& plan) {
    if (plan.status != PlanStatus::ok || !plan.gate_point) {
        throw std::runtime_error("cannot export marked geometry: the plan has no gate point "
                                 "(status is infeasible)");
    }
    const TriangleMesh marker = detail::icosphere(*plan.gate_point, plan.gate_radius);

    const std::size_t vertex_count = mesh.vertices.size() + marker.vertices.size();
    const std::size_t face_count = mesh.facets.size() + marker.facets.size();

    std::ostringstream header;
    header << "ply\n"
           << "format binary_little_endian 1.0\n"
           << "comment moldgate gate marker export\n"
           << "element vertex " << vertex_count << "\n"
           << "property float x\nproperty float y\nproperty float z\n"
           << "property uchar red\nproperty uchar green\nproperty uchar blue\n"
           << "element face " << face_count << "\n"
           << "property list uchar int vertex_indices\n"
           << "end_header\n";

    std::string out = header.str();
    out.reserve(out.size() + vertex_count * 15 + face_count * 13);

    for (const Vec3& v : mesh.vertices) detail::append_vertex(out, v, detail::kPartColor);
    for (const Vec3& v : marker.vertices) detail::append_vertex(out, v, detail::kMarkerColor);

    auto append_face = [&out](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        out.push_back(3);
        detail::append_i32le(out, static_cast<std::int32_t>(a));
        detail::append_i32le(out, static_cast<std::int32_t>(b));
        detail::append_i32le(out, static_cast<std::int32_t>(c));
    };
    for (const Facet& f : mesh.facets) append_face(f.v[0], f.v[1], f.v[2]);
    const std::uint32_t base = static_cast<std::uint32_t>(mesh.vertices.size());
    for (const Facet& f : marker.facets) append_face(base + f.v[0], base + f.v[1], base + f.v[2]);
    return out;
}

} // namespace moldgate
