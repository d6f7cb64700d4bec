#pragma once

// Test geometry builders. All boxes are closed, outward-oriented triangle
// soups (unshared vertices, like a parsed STL).

#include <cstdint>
#include <random>
#include <vector>

#include <moldgate/mesh.hpp>

namespace fixtures {

using moldgate::Facet;
using moldgate::TriangleMesh;
using moldgate::Vec3;

inline void add_triangle(TriangleMesh& mesh, const Vec3& a, const Vec3& b, const Vec3& c) {
    const auto base = static_cast<std::uint32_t>(mesh.vertices.size());
    mesh.vertices.push_back(a);
    mesh.vertices.push_back(b);
    mesh.vertices.push_back(c);
    mesh.facets.push_back(Facet{{base, base + 1, base + 2}, moldgate::geometric_normal(a, b, c)});
}

// Quad split along (a, c); winding gives the outward normal.
inline void add_quad(TriangleMesh& mesh, const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    add_triangle(mesh, a, b, c);
    add_triangle(mesh, a, c, d);
}

// Closed axis-aligned box, 12 facets, outward normals.
inline TriangleMesh make_box(const Vec3& lo, const Vec3& hi) {
    TriangleMesh m;
    const Vec3 v000{lo.x, lo.y, lo.z}, v100{hi.x, lo.y, lo.z}, v010{lo.x, hi.y, lo.z}, v110{hi.x, hi.y, lo.z};
    const Vec3 v001{lo.x, lo.y, hi.z}, v101{hi.x, lo.y, hi.z}, v011{lo.x, hi.y, hi.z}, v111{hi.x, hi.y, hi.z};
    add_quad(m, v001, v101, v111, v011); // top (+z)
    add_quad(m, v000, v010, v110, v100); // bottom (-z)
    add_quad(m, v000, v100, v101, v001); // front (-y)
    add_quad(m, v110, v010, v011, v111); // back (+y)
    add_quad(m, v010, v000, v001, v011); // left (-x)
    add_quad(m, v100, v110, v111, v101); // right (+x)
    return m;
}

inline TriangleMesh make_unit_cube() { return make_box({0, 0, 0}, {1, 1, 1}); }

// The 100 x 100 x 2 mm reference plate.
inline TriangleMesh make_plate() { return make_box({0, 0, 0}, {100, 100, 2}); }

// Unit cube without its top face: 10 facets.
inline TriangleMesh make_open_box() {
    TriangleMesh m;
    const Vec3 v000{0, 0, 0}, v100{1, 0, 0}, v010{0, 1, 0}, v110{1, 1, 0};
    const Vec3 v001{0, 0, 1}, v101{1, 0, 1}, v011{0, 1, 1}, v111{1, 1, 1};
    add_quad(m, v000, v010, v110, v100); // bottom
    add_quad(m, v000, v100, v101, v001); // front
    add_quad(m, v110, v010, v011, v111); // back
    add_quad(m, v010, v000, v001, v011); // left
    add_quad(m, v100, v110, v111, v101); // right
    return m;
}

// 100 x 100 x thickness plate with a centered square through-hole spanning
// [hole_lo, hole_hi] in x and y. Top and bottom are 8-quad frames, plus outer
// and hole walls.
inline TriangleMesh make_plate_with_hole(double hole_lo = 35.0, double hole_hi = 65.0,
                                         double size = 100.0, double thickness = 2.0) {
    TriangleMesh m;
    const double a = hole_lo, b = hole_hi, s = size, t = thickness;

    auto frame = [&](double z, bool up) {
        // 8 rectangles around the hole: corners and edge strips.
        const double xs[4] = {0, a, b, s};
        const double ys[4] = {0, a, b, s};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (i == 1 && j == 1) continue; // the hole
                const Vec3 p00{xs[i], ys[j], z}, p10{xs[i + 1], ys[j], z};
                const Vec3 p11{xs[i + 1], ys[j + 1], z}, p01{xs[i], ys[j + 1], z};
                if (up) add_quad(m, p00, p10, p11, p01);
                else add_quad(m, p00, p01, p11, p10);
            }
        }
    };
    frame(t, true);    // top, +z
    frame(0.0, false); // bottom, -z

    // outer walls
    add_quad(m, {0, 0, 0}, {s, 0, 0}, {s, 0, t}, {0, 0, t});         // -y
    add_quad(m, {s, s, 0}, {0, s, 0}, {0, s, t}, {s, s, t});         // +y
    add_quad(m, {0, s, 0}, {0, 0, 0}, {0, 0, t}, {0, s, t});         // -x
    add_quad(m, {s, 0, 0}, {s, s, 0}, {s, s, t}, {s, 0, t});         // +x
    // hole walls, normals point into the hole
    add_quad(m, {a, a, 0}, {a, a, t}, {b, a, t}, {b, a, 0});         // wall at y = a, normal +y
    add_quad(m, {b, b, 0}, {b, b, t}, {a, b, t}, {a, b, 0});         // wall at y = b, normal -y
    add_quad(m, {a, b, 0}, {a, b, t}, {a, a, t}, {a, a, 0});         // wall at x = a, normal +x
    add_quad(m, {b, a, 0}, {b, a, t}, {b, b, t}, {b, b, 0});         // wall at x = b, normal -x
    return m;
}

// Two plates of different heights joined at x = step_x: a cliff the depth
// coherence check should reject near the step.
inline TriangleMesh make_step_plate(double step_x = 50.0, double low_z = 2.0, double high_z = 10.0) {
    TriangleMesh m;
    const double s = 100.0;
    // low half [0, step_x]
    add_quad(m, {0, 0, low_z}, {step_x, 0, low_z}, {step_x, s, low_z}, {0, s, low_z});
    add_quad(m, {0, 0, 0}, {0, s, 0}, {step_x, s, 0}, {step_x, 0, 0});
    // high half [step_x, 100]
    add_quad(m, {step_x, 0, high_z}, {s, 0, high_z}, {s, s, high_z}, {step_x, s, high_z});
    add_quad(m, {step_x, 0, 0}, {step_x, s, 0}, {s, s, 0}, {s, 0, 0});
    // riser at x = step_x facing -x
    add_quad(m, {step_x, 0, low_z}, {step_x, 0, high_z}, {step_x, s, high_z}, {step_x, s, low_z});
    // outer walls
    add_quad(m, {0, 0, 0}, {step_x, 0, 0}, {step_x, 0, low_z}, {0, 0, low_z});
    add_quad(m, {step_x, 0, 0}, {s, 0, 0}, {s, 0, high_z}, {step_x, 0, high_z});
    add_quad(m, {step_x, s, 0}, {0, s, 0}, {0, s, low_z}, {step_x, s, low_z});
    add_quad(m, {s, s, 0}, {step_x, s, 0}, {step_x, s, high_z}, {s, s, high_z});
    add_quad(m, {0, s, 0}, {0, 0, 0}, {0, 0, low_z}, {0, s, low_z});
    add_quad(m, {s, 0, 0}, {s, s, 0}, {s, s, high_z}, {s, 0, high_z});
    return m;
}

// Square pyramid, apex up.
inline TriangleMesh make_pyramid(double base = 60.0, double height = 30.0) {
    TriangleMesh m;
    const Vec3 apex{base / 2, base / 2, height};
    const Vec3 c0{0, 0, 0}, c1{base, 0, 0}, c2{base, base, 0}, c3{0, base, 0};
    add_quad(m, c0, c3, c2, c1); // base, -z
    add_triangle(m, c0, c1, apex);
    add_triangle(m, c1, c2, apex);
    add_triangle(m, c2, c3, apex);
    add_triangle(m, c3, c0, apex);
    return m;
}

// L-shaped flat bracket (two boxes glued side by side, coplanar tops).
inline TriangleMesh make_l_bracket() {
    TriangleMesh m = make_box({0, 0, 0}, {80, 30, 4});
    const TriangleMesh arm = make_box({0, 30, 0}, {30, 80, 4});
    for (std::size_t f = 0; f < arm.facets.size(); ++f) {
        add_triangle(m, arm.facet_vertex(f, 0), arm.facet_vertex(f, 1), arm.facet_vertex(f, 2));
    }
    return m;
}

// Finely tessellated closed plate: top and bottom are nx x ny quad grids.
// Facet count = 4*nx*ny + 4*(nx + ny).
inline TriangleMesh make_tessellated_plate(int nx, int ny, double size_x = 100.0, double size_y = 100.0,
                                           double thickness = 2.0) {
    TriangleMesh m;
    const double dx = size_x / nx, dy = size_y / ny;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const double x0 = i * dx, x1 = (i + 1) * dx, y0 = j * dy, y1 = (j + 1) * dy;
            add_quad(m, {x0, y0, thickness}, {x1, y0, thickness}, {x1, y1, thickness}, {x0, y1, thickness});
            add_quad(m, {x0, y0, 0}, {x0, y1, 0}, {x1, y1, 0}, {x1, y0, 0});
        }
    }
    for (int i = 0; i < nx; ++i) {
        const double x0 = i * dx, x1 = (i + 1) * dx;
        add_quad(m, {x0, 0, 0}, {x1, 0, 0}, {x1, 0, thickness}, {x0, 0, thickness});
        add_quad(m, {x1, size_y, 0}, {x0, size_y, 0}, {x0, size_y, thickness}, {x1, size_y, thickness});
    }
    for (int j = 0; j < ny; ++j) {
        const double y0 = j * dy, y1 = (j + 1) * dy;
        add_quad(m, {0, y1, 0}, {0, y0, 0}, {0, y0, thickness}, {0, y1, thickness});
        add_quad(m, {size_x, y0, 0}, {size_x, y1, 0}, {size_x, y1, thickness}, {size_x, y0, thickness});
    }
    return m;
}

// Random triangle soup inside a box around the origin; deterministic per seed.
inline TriangleMesh make_random_soup(std::size_t facet_count, unsigned seed, double scale = 50.0) {
    TriangleMesh m;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coord(-scale, scale);
    for (std::size_t f = 0; f < facet_count; ++f) {
        const Vec3 a{coord(rng), coord(rng), coord(rng)};
        const Vec3 b{coord(rng), coord(rng), coord(rng)};
        const Vec3 c{coord(rng), coord(rng), coord(rng)};
        add_triangle(m, a, b, c);
    }
    return m;
}

inline TriangleMesh translated(const TriangleMesh& mesh, const Vec3& offset) {
    TriangleMesh out = mesh;
    for (Vec3& v : out.vertices) v += offset;
    return out;
}

inline TriangleMesh scaled(const TriangleMesh& mesh, double factor) {
    TriangleMesh out = mesh;
    for (Vec3& v : out.vertices) v *= factor;
    return out;
}

} // namespace fixtures
