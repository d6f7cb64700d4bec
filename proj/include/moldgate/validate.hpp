#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "moldgate/mass_properties.hpp"
#include "moldgate/mesh.hpp"

namespace moldgate {

struct MeshError : std::runtime_error {
    explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

// Degenerate facets are flagged but kept: they carry zero area weight, and
// keeping them preserves facet indices for diagnostics.
struct ValidationReport {
    std::size_t facet_count = 0;
    std::size_t vertex_count = 0;
    std::vector<std::size_t> degenerate_facets; // zero-area, retained
    std::size_t duplicate_facets = 0;           // same vertex coordinates as an earlier facet
    std::size_t nonfinite_values = 0;
    double total_area = 0.0; // mm^2

    bool valid() const { return total_area > 0.0 && nonfinite_values == 0; }
};

namespace detail {

struct CoordKeyHash {
    std::size_t operator()(const std::string& s) const { return std::hash<std::string>{}(s); }
};

inline std::string facet_coord_key(const TriangleMesh& mesh, std::size_t f) {
    // Canonical key: the three vertex coordinate triples in sorted byte order,
    // so duplicates are found regardless of winding rotation.
    std::array<std::string, 3> parts;
    for (int k = 0; k < 3; ++k) {
        const Vec3& v = mesh.facet_vertex(f, k);
        parts[static_cast<std::size_t>(k)].assign(reinterpret_cast<const char*>(&v), sizeof(Vec3));
    }
    std::sort(parts.begin(), parts.end());
    return parts[0] + parts[1] + parts[2];
}

} // namespace detail

constexpr double kDegenerateAreaTol = 1e-12; // mm^2

// Counts degenerate facets, duplicate facets and non-finite values. Fatal only
// when no facet carries any area at all.
inline ValidationReport validate_mesh(const TriangleMesh& mesh) {
    ValidationReport report;
    report.facet_count = mesh.facets.size();
    report.vertex_count = mesh.vertices.size();
    if (mesh.facets.empty()) throw MeshError("mesh has no facets");

    for (const Vec3& v : mesh.vertices) {
        if (!std::isfinite(v.x)) ++report.nonfinite_values;
        if (!std::isfinite(v.y)) ++report.nonfinite_values;
        if (!std::isfinite(v.z)) ++report.nonfinite_values;
    }

    std::unordered_map<std::string, std::size_t, detail::CoordKeyHash> seen;
    seen.reserve(mesh.facets.size());
    for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
        const double area = facet_area(mesh.facet_vertex(f, 0), mesh.facet_vertex(f, 1), mesh.facet_vertex(f, 2));
        if (!(area > kDegenerateAreaTol)) {
            report.degenerate_facets.push_back(f);
        } else {
            report.total_area += area;
        }
        auto [it, inserted] = seen.emplace(detail::facet_coord_key(mesh, f), f);
        if (!inserted) ++report.duplicate_facets;
    }

    if (!(report.total_area > 0.0)) {
        throw MeshError("mesh has no usable area: every facet is degenerate");
    }
    return report;
}

} // namespace moldgate
