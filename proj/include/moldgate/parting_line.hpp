#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "moldgate/grid.hpp"
#include "moldgate/weld.hpp"

namespace moldgate {

enum class FacetVisibility { visible, hidden, vertical };

constexpr double kVisibilityTol = 1e-6; // on (unit normal . unit demold dir)

// Classifies a facet against the demolding direction: visible faces the
// +D side, hidden faces away, vertical is parallel within tolerance.
inline FacetVisibility classify_facet(const Vec3& facet_normal, const Vec3& demold_dir) {
    const double a = dot(facet_normal, demold_dir);
    if (a > kVisibilityTol) return FacetVisibility::visible;
    if (a < -kVisibilityTol) return FacetVisibility::hidden;
    return FacetVisibility::vertical;
}

// Silhouette edges with respect to the demolding direction: edges shared by a
// visible facet and a non-visible (hidden or vertical) one. This approximates
// the mold parting line for aesthetic gating.
inline std::vector<EdgeKey> silhouette_edges(const WeldedMesh& welded, const Vec3& demold_dir) {
    const Vec3 d = normalized(demold_dir);
    std::vector<FacetVisibility> vis(welded.facets.size());
    for (std::size_t f = 0; f < welded.facets.size(); ++f) {
        vis[f] = classify_facet(welded.facets[f].normal, d);
    }
    std::vector<EdgeKey> edges;
    for (const auto& [edge, facets] : welded.edge_facets) {
        if (facets.size() < 2) continue;
        bool any_visible = false;
        bool any_other = false;
        for (std::uint32_t f : facets) {
            if (vis[f] == FacetVisibility::visible) any_visible = true;
            else any_other = true;
        }
        if (any_visible && any_other) edges.push_back(edge);
    }
    // Hash-map iteration order is not deterministic; sort by vertex indices.
    std::sort(edges.begin(), edges.end(), [](const EdgeKey& a, const EdgeKey& b) {
        return a.a != b.a ? a.a < b.a : a.b < b.b;
    });
    return edges;
}

namespace detail {

// Samples a segment at arc-length `step` plus both endpoints.
inline void sample_segment(const Vec3& from, const Vec3& to, double step, std::vector<Vec3>& out) {
    out.push_back(from);
    const double len = distance(from, to);
    if (step > 0.0 && len > step) {
        const Vec3 dir = (to - from) / len;
        for (double s = step; s < len - 1e-9; s += step) out.push_back(from + dir * s);
    }
    out.push_back(to);
}

inline void dedupe_points(std::vector<Vec3>& points) {
    std::sort(points.begin(), points.end(), lex_less);
    points.erase(std::unique(points.begin(), points.end(),
                             [](const Vec3& a, const Vec3& b) { return a == b; }),
                 points.end());
}

} // namespace detail

// Candidate gate locations on the approximated parting line: silhouette edge
// endpoints plus samples every `spacing` mm of arc length. Fails when the
// mesh has no silhouette edge (aesthetic placement is then unavailable).
inline std::vector<Vec3> parting_line_candidates(const WeldedMesh& welded, const Vec3& demold_dir,
                                                 double spacing) {
    const std::vector<EdgeKey> edges = silhouette_edges(welded, demold_dir);
    if (edges.empty()) {
        throw std::runtime_error("aesthetic mode unavailable: mesh has no silhouette edges "
                                 "for the given demolding direction");
    }
    std::vector<Vec3> points;
    for (const EdgeKey& e : edges) {
        detail::sample_segment(welded.vertices[e.a], welded.vertices[e.b], spacing, points);
    }
    detail::dedupe_points(points);
    return points;
}

// Candidates from a user-supplied parting polyline (one "x y z" per line,
// closed when first equals last): vertices plus arc-length samples.
inline std::vector<Vec3> polyline_candidates(const std::vector<Vec3>& polyline, double spacing) {
    if (polyline.size() < 2) throw std::runtime_error("parting polyline needs at least two points");
    std::vector<Vec3> points;
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
        detail::sample_segment(polyline[i], polyline[i + 1], spacing, points);
    }
    detail::dedupe_points(points);
    return points;
}

// Parses the plain-text polyline format: one "x y z" triple per line, blank
// lines and '#' comments ignored.
inline std::vector<Vec3> parse_polyline(std::string_view text) {
    std::vector<Vec3> points;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, (eol == std::string_view::npos ? text.size() : eol) - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);

        double coords[3];
        int found = 0;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i >= line.size()) break;
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            if (found >= 3) { found = 4; break; }
            auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, coords[found]);
            if (ec != std::errc{} || ptr != line.data() + j) { found = -1; break; }
            ++found;
            i = j;
        }
        if (found == 0) continue; // blank or comment-only line
        if (found != 3) {
            std::ostringstream os;
            os << "parting line file, line " << line_no << ": expected three coordinates";
            throw std::runtime_error(os.str());
        }
        points.push_back({coords[0], coords[1], coords[2]});
    }
    return points;
}

} // namespace moldgate
