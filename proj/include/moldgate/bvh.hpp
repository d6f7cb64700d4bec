#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "moldgate/mesh.hpp"
#include "moldgate/ray.hpp"

namespace moldgate {

// Bounding volume hierarchy over facets. Construction is fully deterministic
// (median split on the longest centroid-bounds axis, ties resolved x < y < z,
// equal centroids ordered by facet index) so plans reproduce across machines
// and thread counts. Immutable after build; concurrent queries need no
// synchronization.
class BvhAccel {
public:
    static constexpr std::size_t kLeafSize = 4;

    explicit BvhAccel(const TriangleMesh& mesh) : mesh_(&mesh) {
        const std::size_t n = mesh.facets.size();
        facet_order_.resize(n);
        std::iota(facet_order_.begin(), facet_order_.end(), 0u);
        boxes_.reserve(n);
        centroids_.reserve(n);
        for (std::size_t f = 0; f < n; ++f) {
            const Aabb box = facet_bounds(mesh, f);
            boxes_.push_back(box);
            centroids_.push_back(box.center());
        }
        if (n > 0) {
            nodes_.reserve(2 * n);
            build_node(0, n);
        }
    }

    const Aabb& root_bounds() const { return nodes_.front().bounds; }
    std::size_t node_count() const { return nodes_.size(); }

    std::size_t leaf_count() const {
        std::size_t leaves = 0;
        for (const Node& nd : nodes_) leaves += nd.count > 0 ? 1 : 0;
        return leaves;
    }

    // Nearest intersection by ray parameter; exact t ties go to the smaller
    // facet index, matching the brute-force ordering.
    std::optional<Hit> nearest_hit(const Ray& ray) const {
        if (nodes_.empty()) return std::nullopt;

        bool found = false;
        double best_t = std::numeric_limits<double>::infinity();
        std::uint32_t best_f = 0;

        std::vector<std::uint32_t> stack;
        stack.reserve(64);
        stack.push_back(0);
        while (!stack.empty()) {
            const std::uint32_t node_index = stack.back();
            stack.pop_back();
            const Node& node = nodes_[node_index];
            if (!box_hits(node.bounds, ray, best_t)) continue;
            if (node.count > 0) {
                for (std::uint32_t k = 0; k < node.count; ++k) {
                    const std::uint32_t f = facet_order_[node.first + k];
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
            } else {
                stack.push_back(node.right);     // popped second
                stack.push_back(node_index + 1); // left child, popped first
            }
        }
        if (!found) return std::nullopt;
        return detail::make_hit(*mesh_, best_f, ray, best_t);
    }

private:
    struct Node {
        Aabb bounds;
        std::uint32_t first = 0; // leaf only: offset into facet_order_
        std::uint32_t right = 0; // inner only: right child index (left child is self + 1)
        std::uint32_t count = 0; // leaf: facet count; inner: 0
    };

    // Slab test against [0, t_limit], inclusive so rays on a box face still
    // enter. Axes the ray is parallel to fall back to a containment check,
    // avoiding 0 * inf.
    static bool box_hits(const Aabb& b, const Ray& ray, double t_limit) {
        double t0 = 0.0;
        double t1 = t_limit;
        for (int axis = 0; axis < 3; ++axis) {
            const double d = ray.direction[axis];
            const double o = ray.origin[axis];
            if (d == 0.0) {
                if (o < b.min[axis] || o > b.max[axis]) return false;
                continue;
            }
            double lo = (b.min[axis] - o) / d;
            double hi = (b.max[axis] - o) / d;
            if (lo > hi) std::swap(lo, hi);
            t0 = std::max(t0, lo);
            t1 = std::min(t1, hi);
            if (t0 > t1) return false;
        }
        return true;
    }

    std::uint32_t build_node(std::size_t begin, std::size_t end) {
        const std::uint32_t index = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back(Node{});
        Aabb bounds;
        Aabb centroid_bounds;
        for (std::size_t i = begin; i < end; ++i) {
            bounds.expand(boxes_[facet_order_[i]]);
            centroid_bounds.expand(centroids_[facet_order_[i]]);
        }
        nodes_[index].bounds = bounds;

        const std::size_t count = end - begin;
        const Vec3 ext = centroid_bounds.extent();
        int axis = 0;
        if (ext.y > ext[axis]) axis = 1;
        if (ext.z > ext[axis]) axis = 2;

        if (count <= kLeafSize || !(ext[axis] > 0.0)) {
            nodes_[index].first = static_cast<std::uint32_t>(begin);
            nodes_[index].count = static_cast<std::uint32_t>(count);
            std::sort(facet_order_.begin() + static_cast<std::ptrdiff_t>(begin),
                      facet_order_.begin() + static_cast<std::ptrdiff_t>(end));
            return index;
        }

        const std::size_t mid = begin + count / 2;
        std::nth_element(facet_order_.begin() + static_cast<std::ptrdiff_t>(begin),
                         facet_order_.begin() + static_cast<std::ptrdiff_t>(mid),
                         facet_order_.begin() + static_cast<std::ptrdiff_t>(end),
                         [&](std::uint32_t a, std::uint32_t b) {
                             const double ca = centroids_[a][axis];
                             const double cb = centroids_[b][axis];
                             if (ca != cb) return ca < cb;
                             return a < b;
                         });

        build_node(begin, mid); // left child lands at index + 1
        nodes_[index].right = build_node(mid, end);
        nodes_[index].count = 0;
        return index;
    }

    const TriangleMesh* mesh_;
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> facet_order_;
    std::vector<Aabb> boxes_;
    std::vector<Vec3> centroids_;
};

inline BvhAccel build_accel(const TriangleMesh& mesh) { return BvhAccel(mesh); }

inline std::optional<Hit> ray_nearest_hit(const BvhAccel& accel, const Ray& ray) {
    return accel.nearest_hit(ray);
}

} // namespace moldgate
