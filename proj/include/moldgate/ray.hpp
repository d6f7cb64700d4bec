#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "moldgate/mesh.hpp"

namespace moldgate {

constexpr double kRayParallelTol = 1e-12; // |unit normal . unit dir| below this is a miss
constexpr double kHitDedupTol = 1e-9;     // mm along the ray; grazing hits within this are one hit

struct Ray {
    Vec3 origin;    // mm
    Vec3 direction; // unit
};

inline Ray make_ray(const Vec3& origin, const Vec3& direction) {
    const double n = norm(direction);
    if (!(n > 0.0)) throw std::invalid_argument("make_ray: zero direction");
    return {origin, direction / n};
}

// One ray/facet intersection. alignment is the sign of (facet normal . ray
// direction): -1 means the ray meets the front of the facet.
struct Hit {
    std::uint32_t facet = 0;
    double t = 0.0; // ray parameter, mm
    Vec3 point;
    int alignment = 0;
};

namespace detail {

// Barycentric ray/triangle test with inclusive edge bounds, so rays through a
// shared edge or vertex register on every touching facet; duplicates are
// collapsed later by unique t. Rays lying in the facet plane
// (|unit normal . dir| < kRayParallelTol) miss: vertical walls are not hit by
// the demolding-direction projection.
inline std::optional<double> intersect_triangle(const Vec3& origin, const Vec3& dir,
                                                const Vec3& v1, const Vec3& v2, const Vec3& v3) {
    const Vec3 e1 = v2 - v1;
    const Vec3 e2 = v3 - v1;
    const Vec3 pvec = cross(dir, e2);
    const double det = dot(e1, pvec); // = -(dir . (e1 x e2))
    const double scale = norm(cross(e1, e2));
    if (std::abs(det) < kRayParallelTol * scale || scale == 0.0) return std::nullopt;
    const Vec3 tvec = origin - v1;
    const double u = dot(tvec, pvec) / det;
    if (u < 0.0 || u > 1.0) return std::nullopt;
    const Vec3 qvec = cross(tvec, e1);
    const double v = dot(dir, qvec) / det;
    if (v < 0.0 || u + v > 1.0) return std::nullopt;
    const double t = dot(e2, qvec) / det;
    if (t < 0.0) return std::nullopt;
    return t;
}

inline Hit make_hit(const TriangleMesh& mesh, std::uint32_t facet, const Ray& ray, double t) {
    const double a = dot(mesh.facets[facet].normal, ray.direction);
    return {facet, t, ray.origin + ray.direction * t, (a > 0.0) - (a < 0.0)};
}

// Strict ordering for nearest-hit selection: parameter first, facet index
// breaks exact ties.
inline bool hit_before(double t_a, std::uint32_t f_a, double t_b, std::uint32_t f_b) {
    if (t_a != t_b) return t_a < t_b;
    return f_a < f_b;
}

} // namespace detail

// Every intersection along the ray, sorted by t ascending, grazing duplicates
// within kHitDedupTol collapsed to the smallest facet index. O(facets); this
// is the oracle the accelerated path is checked against.
inline std::vector<Hit> ray_all_hits_bruteforce(const TriangleMesh& mesh, const Ray& ray) {
    std::vector<Hit> hits;
    for (std::uint32_t f = 0; f < mesh.facets.size(); ++f) {
        const auto t = detail::intersect_triangle(ray.origin, ray.direction,
                                                  mesh.facet_vertex(f, 0),
                                                  mesh.facet_vertex(f, 1),
                                                  mesh.facet_vertex(f, 2));
        if (t) hits.push_back(detail::make_hit(mesh, f, ray, *t));
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        return detail::hit_before(a.t, a.facet, b.t, b.facet);
    });
    std::vector<Hit> unique;
    unique.reserve(hits.size());
    for (const Hit& h : hits) {
        if (!unique.empty() && std::abs(h.t - unique.back().t) <= kHitDedupTol) continue;
        unique.push_back(h);
    }
    return unique;
}

// Linear-scan intersector with the same query surface as the BVH, used as the
// reference path in oracle-equivalence tests.
class BruteForceIntersector {
public:
    explicit BruteForceIntersector(const TriangleMesh& mesh) : mesh_(&mesh) {}

    std::optional<Hit> nearest_hit(const Ray& ray) const {
        bool found = false;
        double best_t = 0.0;
        std::uint32_t best_f = 0;
        for (std::uint32_t f = 0; f < mesh_->facets.size(); ++f) {
            const auto t = detail::intersect_triangle(ray.origin, ray.direction,
                                                      mesh_->facet_vertex(f, 0),
                                                      mesh_->facet_vertex(f, 1),
                                                      mesh_->facet_vertex(f, 2));
            if (!t) continue;
            if (!found || detail::hit_before(*t, f, best_t, best_f)) {
                found = true;
                best_t = *t;
                best_f = f;
            }
        }
        if (!found) return std::nullopt;
        return detail::make_hit(*mesh_, best_f, ray, best_t);
    }

private:
    const TriangleMesh* mesh_;
};

} // namespace moldgate
