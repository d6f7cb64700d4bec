#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "moldgate/geometry.hpp"

namespace moldgate {

// In-plane coordinates on the grid plane, mm.
struct Vec2 {
    double u = 0.0;
    double v = 0.0;
};

// Right-handed orthonormal frame (U, V, D) for the plane orthogonal to the
// demolding direction. U is the world axis least aligned with D (ties go
// x, y, z), projected into the plane; this keeps axis-aligned demolding
// directions on intuitive frames: D = +Z uses (X, Y), D = +X uses (Y, Z).
struct PlaneFrame {
    Vec3 u_axis;
    Vec3 v_axis;
    Vec3 demold_dir; // unit
    double height = 0.0; // plane offset along D, mm

    Vec3 to_world(const Vec2& p) const {
        return u_axis * p.u + v_axis * p.v + demold_dir * height;
    }

    Vec2 to_plane(const Vec3& p) const { return {dot(p, u_axis), dot(p, v_axis)}; }
};

inline PlaneFrame make_plane_frame(const Vec3& demold_dir, double height) {
    const double n = norm(demold_dir);
    if (!(n > 0.0)) throw std::invalid_argument("demolding direction must be non-zero");
    const Vec3 d = demold_dir / n;

    int least = 0;
    double least_dot = std::abs(d.x);
    if (std::abs(d.y) < least_dot) { least = 1; least_dot = std::abs(d.y); }
    if (std::abs(d.z) < least_dot) { least = 2; }
    Vec3 helper{0.0, 0.0, 0.0};
    helper[least] = 1.0;

    const Vec3 u = normalized(helper - d * dot(helper, d));
    const Vec3 v = cross(d, u);
    return {u, v, d, height};
}

struct NodeId {
    int i = 0; // index along U
    int j = 0; // index along V
    bool operator==(const NodeId& o) const { return i == o.i && j == o.j; }
    bool operator<(const NodeId& o) const { return i != o.i ? i < o.i : j < o.j; }
};

// The candidate lattice: an (i, j) grid of plane coordinates covering the
// bounding-box footprint perpendicular to the demolding direction, boundary
// inclusive. The plane sits 1 mm outside the part on the +D side so every
// projection ray starts strictly outside.
struct NodalGrid {
    PlaneFrame frame;
    std::vector<double> u_coords;
    std::vector<double> v_coords;
    double spacing = 0.0;

    std::size_t count_u() const { return u_coords.size(); }
    std::size_t count_v() const { return v_coords.size(); }
    std::size_t node_count() const { return u_coords.size() * v_coords.size(); }

    Vec2 node_planar(const NodeId& id) const {
        return {u_coords[static_cast<std::size_t>(id.i)], v_coords[static_cast<std::size_t>(id.j)]};
    }

    Vec3 node_world(const NodeId& id) const { return frame.to_world(node_planar(id)); }
};

constexpr double kGridPlaneClearance = 1.0;  // mm beyond the bounding box
constexpr double kFootprintDegenerateTol = 1e-12; // mm

namespace detail {

// Lattice coordinates from min to max inclusive. The last step is clamped to
// the boundary; a small relief on the division keeps an exactly divisible
// extent from producing a duplicate clamped node.
inline std::vector<double> lattice_axis(double lo, double hi, double spacing) {
    const double extent = hi - lo;
    std::vector<double> coords;
    if (extent <= 0.0) {
        coords.push_back(lo);
        return coords;
    }
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(extent / spacing - 1e-9)));
    coords.reserve(steps + 1);
    for (std::size_t k = 0; k < steps; ++k) coords.push_back(lo + static_cast<double>(k) * spacing);
    coords.push_back(hi);
    return coords;
}

} // namespace detail

// Builds the nodal lattice over the footprint of `box` perpendicular to the
// demolding direction. Fails when the footprint is degenerate (the part is a
// line along the demolding direction).
inline NodalGrid build_grid(const Aabb& box, const Vec3& demold_dir, double spacing) {
    if (!(spacing > 0.0)) throw std::invalid_argument("build_grid: spacing must be positive");
    if (box.empty()) throw std::invalid_argument("build_grid: empty bounding box");

    PlaneFrame frame = make_plane_frame(demold_dir, 0.0);

    double u_min = std::numeric_limits<double>::max(), u_max = std::numeric_limits<double>::lowest();
    double v_min = u_min, v_max = u_max;
    double d_max = u_max;
    for (int cx = 0; cx < 2; ++cx)
        for (int cy = 0; cy < 2; ++cy)
            for (int cz = 0; cz < 2; ++cz) {
                const Vec3 corner{cx ? box.max.x : box.min.x,
                                  cy ? box.max.y : box.min.y,
                                  cz ? box.max.z : box.min.z};
                const Vec2 p = frame.to_plane(corner);
                u_min = std::min(u_min, p.u); u_max = std::max(u_max, p.u);
                v_min = std::min(v_min, p.v); v_max = std::max(v_max, p.v);
                d_max = std::max(d_max, dot(corner, frame.demold_dir));
            }

    if (u_max - u_min <= kFootprintDegenerateTol && v_max - v_min <= kFootprintDegenerateTol) {
        throw std::invalid_argument("build_grid: degenerate footprint, part is a line along the demolding direction");
    }

    frame.height = d_max + kGridPlaneClearance;

    NodalGrid grid;
    grid.frame = frame;
    grid.spacing = spacing;
    grid.u_coords = detail::lattice_axis(u_min, u_max, spacing);
    grid.v_coords = detail::lattice_axis(v_min, v_max, spacing);
    return grid;
}

// The clearance ring around a node: m points at planar distance `radius` from
// the node, at angles 2*pi*k/m.
inline std::vector<Vec2> ring_points(const Vec2& node, double radius, int samples) {
    if (!(radius > 0.0)) throw std::invalid_argument("ring_points: radius must be positive");
    if (samples < 8) throw std::invalid_argument("ring_points: at least 8 samples required");
    std::vector<Vec2> points;
    points.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
        points.push_back({radius * std::cos(theta) + node.u, radius * std::sin(theta) + node.v});
    }
    return points;
}

} // namespace moldgate
