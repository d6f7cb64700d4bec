#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "moldgate/mesh.hpp"

namespace moldgate {

// Undirected edge between welded vertex indices, smaller index first.
struct EdgeKey {
    std::uint32_t a = 0;
    std::uint32_t b = 0;

    EdgeKey() = default;
    EdgeKey(std::uint32_t i, std::uint32_t j) : a(i < j ? i : j), b(i < j ? j : i) {}
    bool operator==(const EdgeKey& o) const { return a == o.a && b == o.b; }
};

struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& e) const {
        return std::hash<std::uint64_t>{}((std::uint64_t(e.a) << 32) | e.b);
    }
};

// Mesh with coincident vertices merged and edge-to-facet adjacency built.
// Manifoldness is not required; an edge may list any number of facets.
struct WeldedMesh {
    std::vector<Vec3> vertices;                   // deduplicated
    std::vector<Facet> facets;                    // re-indexed, same count and order as the input
    std::vector<std::uint32_t> vertex_remap;      // original vertex index -> welded index
    std::unordered_map<EdgeKey, std::vector<std::uint32_t>, EdgeKeyHash> edge_facets;
};

namespace detail {

struct CellKey {
    std::int64_t x, y, z;
    bool operator==(const CellKey& o) const { return x == o.x && y == o.y && z == o.z; }
};

struct CellKeyHash {
    std::size_t operator()(const CellKey& c) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::int64_t v : {c.x, c.y, c.z}) {
            h ^= static_cast<std::uint64_t>(v);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

inline CellKey cell_of(const Vec3& p, double cell) {
    return {static_cast<std::int64_t>(std::floor(p.x / cell)),
            static_cast<std::int64_t>(std::floor(p.y / cell)),
            static_cast<std::int64_t>(std::floor(p.z / cell))};
}

} // namespace detail

// Merges vertices within `tolerance` (mm) via spatial hashing. Each vertex is
// mapped to the first accepted representative within tolerance, in vertex
// index order, so no merged vertex moves by more than the tolerance and the
// result is deterministic. Facet count and order are unchanged.
inline WeldedMesh weld_vertices(const TriangleMesh& mesh, double tolerance = 1e-6) {
    if (tolerance < 0.0) throw std::invalid_argument("weld_vertices: tolerance must be >= 0");

    WeldedMesh out;
    out.vertex_remap.resize(mesh.vertices.size());

    const double cell = tolerance > 0.0 ? tolerance : 1.0;
    std::unordered_map<detail::CellKey, std::vector<std::uint32_t>, detail::CellKeyHash> grid;
    grid.reserve(mesh.vertices.size());
    const double tol2 = tolerance * tolerance;

    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const Vec3& p = mesh.vertices[i];
        std::uint32_t rep = std::numeric_limits<std::uint32_t>::max();
        const detail::CellKey c = detail::cell_of(p, cell);
        for (std::int64_t dx = -1; dx <= 1 && rep == std::numeric_limits<std::uint32_t>::max(); ++dx)
            for (std::int64_t dy = -1; dy <= 1 && rep == std::numeric_limits<std::uint32_t>::max(); ++dy)
                for (std::int64_t dz = -1; dz <= 1; ++dz) {
                    auto it = grid.find({c.x + dx, c.y + dy, c.z + dz});
                    if (it == grid.end()) continue;
                    for (std::uint32_t cand : it->second) {
                        if (squared_norm(out.vertices[cand] - p) <= tol2) { rep = cand; break; }
                    }
                    if (rep != std::numeric_limits<std::uint32_t>::max()) break;
                }
        if (rep == std::numeric_limits<std::uint32_t>::max()) {
            rep = static_cast<std::uint32_t>(out.vertices.size());
            out.vertices.push_back(p);
            grid[c].push_back(rep);
        }
        out.vertex_remap[i] = rep;
    }

    out.facets.reserve(mesh.facets.size());
    for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
        Facet fc = mesh.facets[f];
        for (auto& idx : fc.v) idx = out.vertex_remap[idx];
        out.facets.push_back(fc);
    }

    for (std::size_t f = 0; f < out.facets.size(); ++f) {
        const auto& v = out.facets[f].v;
        EdgeKey keys[3];
        int n = 0;
        for (int k = 0; k < 3; ++k) {
            const std::uint32_t a = v[static_cast<std::size_t>(k)];
            const std::uint32_t b = v[static_cast<std::size_t>((k + 1) % 3)];
            if (a == b) continue; // collapsed edge of a degenerate facet
            const EdgeKey key{a, b};
            bool dup = false;
            for (int m = 0; m < n; ++m) dup = dup || (keys[m] == key);
            if (!dup) keys[n++] = key;
        }
        for (int m = 0; m < n; ++m) {
            out.edge_facets[keys[m]].push_back(static_cast<std::uint32_t>(f));
        }
    }
    return out;
}

} // namespace moldgate
