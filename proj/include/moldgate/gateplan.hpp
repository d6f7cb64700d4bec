#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "moldgate/bvh.hpp"
#include "moldgate/grid.hpp"
#include "moldgate/mass_properties.hpp"
#include "moldgate/mesh.hpp"
#include "moldgate/parting_line.hpp"
#include "moldgate/ray.hpp"
#include "moldgate/rheology.hpp"
#include "moldgate/validate.hpp"
#include "moldgate/weld.hpp"

namespace moldgate {

struct PlanError : std::runtime_error {
    explicit PlanError(const std::string& what) : std::runtime_error(what) {}
};

struct ThicknessViolation : PlanError {
    ThicknessViolation(double gate_radius_mm, double thickness_mm)
        : PlanError("thickness violation: R_gate must be smaller than part thickness (R_gate = " +
                    std::to_string(gate_radius_mm) + " mm, H = " + std::to_string(thickness_mm) + " mm)") {}
};

// Planner configuration. Tie-breaking is a fixed policy, not a knob: candidates
// are ordered by 3D surface-point distance to the center of mass, then planar
// node distance to the projected center of mass, then lexicographic (i, j).
struct PlanConfig {
    Vec3 demold_dir{0.0, 0.0, 1.0};
    std::optional<double> grid_spacing;        // mm; defaults to default_grid_spacing()
    int ring_samples = 16;                     // >= 8
    double part_thickness = 0.0;               // H, mm; required
    bool aesthetic = false;
    std::optional<double> depth_coherence_tol; // mm; defaults to part_thickness
    bool check_depth_coherence = true;         // off = strict projection-only behavior
    std::optional<double> rect_aspect;         // w/h >= 1; adds a rectangular gate equivalent
    std::vector<Vec3> parting_line_override;   // replaces silhouette extraction when non-empty
};

enum class RejectionReason {
    none,
    footprint_miss,   // node ray does not meet the part
    ring_miss,        // a ring ray does not meet the part
    back_facing,      // node ray first meets a surface facing away from the demolding side
    depth_incoherent, // ring depths spread further than the tolerance
    thickness_violation,
};

inline const char* to_string(RejectionReason r) {
    switch (r) {
        case RejectionReason::none: return "none";
        case RejectionReason::footprint_miss: return "footprint_miss";
        case RejectionReason::ring_miss: return "ring_miss";
        case RejectionReason::back_facing: return "back_facing";
        case RejectionReason::depth_incoherent: return "depth_incoherent";
        case RejectionReason::thickness_violation: return "thickness_violation";
    }
    return "unknown";
}

constexpr std::size_t kRejectionReasonCount = 6;

struct NodeEvaluation {
    NodeId id;
    bool feasible = false;
    RejectionReason reason = RejectionReason::none;
    std::optional<Hit> node_hit;
    double ring_depth_min = 0.0;
    double ring_depth_max = 0.0;
    Vec3 surface_point;        // valid when feasible
    double distance_to_cm = 0.0; // 3D, mm; valid when feasible
};

enum class PlanMode { standard, aesthetic };
enum class PlanStatus { ok, infeasible };

inline const char* to_string(PlanMode m) { return m == PlanMode::standard ? "standard" : "aesthetic"; }
inline const char* to_string(PlanStatus s) { return s == PlanStatus::ok ? "ok" : "infeasible"; }

// Full planning result. Optional fields are set when status == ok.
struct GatePlan {
    PlanStatus status = PlanStatus::infeasible;
    PlanMode mode = PlanMode::standard;
    Vec3 center_of_mass;
    double total_area = 0.0;     // mm^2
    double front_velocity = 0.0; // mm/s
    double gate_radius = 0.0;    // mm
    std::optional<RectGate> rectangular;
    std::optional<Vec3> gate_point;
    std::optional<NodeId> chosen_node; // standard mode only
    std::optional<double> distance_to_cm;
    std::size_t total_nodes = 0;
    std::size_t feasible_nodes = 0;
    std::array<std::size_t, kRejectionReasonCount> rejections{}; // indexed by RejectionReason
    std::optional<double> flow_length;   // mm
    std::optional<double> pressure_drop; // MPa
    double grid_spacing = 0.0;           // resolved value, mm
};

// Default lattice accuracy: tracks the tessellation's detail level without
// exploding the node count. max(bbox diagonal / 200, 5th percentile of the
// nonzero facet edge lengths).
inline double default_grid_spacing(const TriangleMesh& mesh, const Aabb& box) {
    std::vector<double> edge_lengths;
    edge_lengths.reserve(mesh.facets.size() * 3);
    for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
        for (int k = 0; k < 3; ++k) {
            const double len = distance(mesh.facet_vertex(f, k), mesh.facet_vertex(f, (k + 1) % 3));
            if (len > 0.0) edge_lengths.push_back(len);
        }
    }
    const double floor_spacing = box.diagonal() / 200.0;
    if (edge_lengths.empty()) return std::max(floor_spacing, 1e-3);
    std::sort(edge_lengths.begin(), edge_lengths.end());
    const std::size_t rank = static_cast<std::size_t>(0.05 * static_cast<double>(edge_lengths.size() - 1));
    return std::max(floor_spacing, edge_lengths[rank]);
}

// Upper-bound proxy for the melt flow length: the farthest mesh vertex from
// the gate, straight-line. The true flow length is geodesic and longer paths
// are not modelled; reports label this a proxy.
inline double flow_length_proxy(const TriangleMesh& mesh, const Vec3& gate_point) {
    double best = 0.0;
    for (const Vec3& v : mesh.vertices) best = std::max(best, squared_norm(v - gate_point));
    return std::sqrt(best);
}

// Casts the node ray and its m ring rays along -D and applies the feasibility
// rules: the node ray must hit, the first hit must face the demolding side,
// every ring ray must hit, and (unless disabled) all ring depths must lie
// within the coherence tolerance of the node depth so the gate cannot
// straddle a step.
template <typename Intersector>
NodeEvaluation evaluate_node(const Intersector& accel, const NodalGrid& grid, const NodeId& id,
                             double gate_radius_mm, const PlanConfig& config, const Vec3& center_of_mass) {
    NodeEvaluation eval;
    eval.id = id;

    const Vec3 dir = -grid.frame.demold_dir;
    const Vec2 node = grid.node_planar(id);
    const Ray node_ray{grid.node_world(id), dir};

    eval.node_hit = accel.nearest_hit(node_ray);
    if (!eval.node_hit) {
        eval.reason = RejectionReason::footprint_miss;
        return eval;
    }
    // alignment is sign(normal . ray dir); the ray runs along -D, so a surface
    // facing the demolding side has alignment -1.
    if (eval.node_hit->alignment >= 0) {
        eval.reason = RejectionReason::back_facing;
        return eval;
    }

    const double node_depth = eval.node_hit->t;
    eval.ring_depth_min = node_depth;
    eval.ring_depth_max = node_depth;

    const double coherence_tol = config.depth_coherence_tol.value_or(config.part_thickness);
    for (const Vec2& p : ring_points(node, gate_radius_mm, config.ring_samples)) {
        const Ray ring_ray{grid.frame.to_world(p), dir};
        const auto hit = accel.nearest_hit(ring_ray);
        if (!hit) {
            eval.reason = RejectionReason::ring_miss;
            return eval;
        }
        eval.ring_depth_min = std::min(eval.ring_depth_min, hit->t);
        eval.ring_depth_max = std::max(eval.ring_depth_max, hit->t);
        if (config.check_depth_coherence && std::abs(hit->t - node_depth) > coherence_tol) {
            eval.reason = RejectionReason::depth_incoherent;
            return eval;
        }
    }

    eval.feasible = true;
    eval.surface_point = eval.node_hit->point;
    eval.distance_to_cm = distance(eval.surface_point, center_of_mass);
    return eval;
}

// Evaluates every lattice node, optionally across worker threads. Results are
// stored by node index, so the outcome is identical for any thread count.
template <typename Intersector>
std::vector<NodeEvaluation> evaluate_all_nodes(const Intersector& accel, const NodalGrid& grid,
                                               double gate_radius_mm, const PlanConfig& config,
                                               const Vec3& center_of_mass, unsigned threads = 1) {
    const std::size_t nu = grid.count_u();
    const std::size_t total = grid.node_count();
    std::vector<NodeEvaluation> evals(total);

    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const NodeId id{static_cast<int>(k % nu), static_cast<int>(k / nu)};
            evals[k] = evaluate_node(accel, grid, id, gate_radius_mm, config, center_of_mass);
        }
    };

    const unsigned workers = std::max(1u, std::min(threads, static_cast<unsigned>(total)));
    if (workers == 1) {
        run_range(0, total);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (total + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = static_cast<std::size_t>(w) * chunk;
            const std::size_t end = std::min(total, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& t : pool) t.join();
    }
    return evals;
}

namespace detail {

struct SelectionKey {
    double distance_3d;
    double distance_planar;
    NodeId id;

    bool operator<(const SelectionKey& o) const {
        if (distance_3d != o.distance_3d) return distance_3d < o.distance_3d;
        if (distance_planar != o.distance_planar) return distance_planar < o.distance_planar;
        return id < o.id;
    }
};

inline SelectionKey selection_key(const NodeEvaluation& e, const NodalGrid& grid, const Vec2& cm_planar) {
    const Vec2 node = grid.node_planar(e.id);
    const double du = node.u - cm_planar.u;
    const double dv = node.v - cm_planar.v;
    return {e.distance_to_cm, std::sqrt(du * du + dv * dv), e.id};
}

} // namespace detail

struct NoFeasibleNode : PlanError {
    explicit NoFeasibleNode(const std::string& detail)
        : PlanError("no valid gate location: " + detail) {}
};

// Picks the feasible node whose surface point lies closest to the center of
// mass. Ties break on planar node distance to the projected center of mass,
// then on (i, j). Throws NoFeasibleNode with per-reason counts when nothing
// is feasible.
inline const NodeEvaluation& select_gate(const std::vector<NodeEvaluation>& evaluations,
                                         const NodalGrid& grid, const Vec3& center_of_mass) {
    const Vec2 cm_planar = grid.frame.to_plane(center_of_mass);
    const NodeEvaluation* best = nullptr;
    detail::SelectionKey best_key{};
    for (const NodeEvaluation& e : evaluations) {
        if (!e.feasible) continue;
        const detail::SelectionKey key = detail::selection_key(e, grid, cm_planar);
        if (!best || key < best_key) {
            best = &e;
            best_key = key;
        }
    }
    if (!best) {
        std::array<std::size_t, kRejectionReasonCount> counts{};
        for (const NodeEvaluation& e : evaluations) counts[static_cast<std::size_t>(e.reason)]++;
        std::string detail_msg = "0 of " + std::to_string(evaluations.size()) + " nodes feasible (";
        bool first = true;
        for (std::size_t r = 1; r < kRejectionReasonCount; ++r) {
            if (counts[r] == 0) continue;
            if (!first) detail_msg += ", ";
            detail_msg += std::string(to_string(static_cast<RejectionReason>(r))) + ": " + std::to_string(counts[r]);
            first = false;
        }
        detail_msg += ")";
        throw NoFeasibleNode(detail_msg);
    }
    return *best;
}

namespace detail {

inline void validate_config(const PlanConfig& config) {
    if (!(norm(config.demold_dir) > 0.0)) throw std::invalid_argument("demolding direction must be non-zero");
    if (config.ring_samples < 8) throw std::invalid_argument("ring_samples must be >= 8");
    if (!(config.part_thickness > 0.0)) throw std::invalid_argument("part thickness must be positive");
    if (config.grid_spacing && !(*config.grid_spacing > 0.0)) {
        throw std::invalid_argument("grid spacing must be positive");
    }
    if (config.depth_coherence_tol && !(*config.depth_coherence_tol >= 0.0)) {
        throw std::invalid_argument("depth coherence tolerance must be >= 0");
    }
}

inline const Vec3* aesthetic_choice(const std::vector<Vec3>& candidates, const Vec3& cm) {
    const Vec3* best = nullptr;
    double best_dist = 0.0;
    for (const Vec3& p : candidates) {
        const double d = distance(p, cm);
        if (!best || d < best_dist || (d == best_dist && lex_less(p, *best))) {
            best = &p;
            best_dist = d;
        }
    }
    return best;
}

} // namespace detail

// The full pipeline: center of mass, gate sizing, thickness guard, lattice
// build, node evaluation, selection (or parting-line placement in aesthetic
// mode), and the pressure-drop estimate. Deterministic for any thread count.
inline GatePlan plan_gate(const TriangleMesh& mesh, const MaterialParams& material,
                          const PlanConfig& config, unsigned threads = 1) {
    detail::validate_config(config);
    validate_material(material);
    validate_mesh(mesh);

    GatePlan plan;
    plan.mode = config.aesthetic ? PlanMode::aesthetic : PlanMode::standard;

    const CenterOfMass cm = mesh_center_of_mass(mesh);
    plan.center_of_mass = cm.point;
    plan.total_area = cm.total_area;

    const GateSizing sizing = size_gate(material);
    plan.front_velocity = sizing.front_velocity;
    plan.gate_radius = sizing.gate_radius;
    if (config.rect_aspect) plan.rectangular = rectangular_gate(sizing.gate_radius, *config.rect_aspect);

    if (!(plan.gate_radius < config.part_thickness)) {
        throw ThicknessViolation(plan.gate_radius, config.part_thickness);
    }

    const Aabb box = bounding_box(mesh);
    const double spacing = config.grid_spacing.value_or(default_grid_spacing(mesh, box));
    plan.grid_spacing = spacing;
    const NodalGrid grid = build_grid(box, config.demold_dir, spacing);
    plan.total_nodes = grid.node_count();

    const BvhAccel accel(mesh);
    const std::vector<NodeEvaluation> evals =
        evaluate_all_nodes(accel, grid, plan.gate_radius, config, cm.point, threads);
    for (const NodeEvaluation& e : evals) {
        if (e.feasible) ++plan.feasible_nodes;
        else ++plan.rejections[static_cast<std::size_t>(e.reason)];
    }

    Vec3 gate;
    if (plan.mode == PlanMode::aesthetic) {
        std::vector<Vec3> candidates;
        if (!config.parting_line_override.empty()) {
            candidates = polyline_candidates(config.parting_line_override, spacing);
        } else {
            const WeldedMesh welded = weld_vertices(mesh);
            candidates = parting_line_candidates(welded, normalized(config.demold_dir), spacing);
        }
        const Vec3* choice = detail::aesthetic_choice(candidates, cm.point);
        if (!choice) return plan; // status stays infeasible
        gate = *choice;
        plan.status = PlanStatus::ok;
        plan.gate_point = gate;
        plan.distance_to_cm = distance(gate, cm.point);
    } else {
        if (plan.feasible_nodes == 0) return plan; // infeasible; caller reports the histogram
        const NodeEvaluation& chosen = select_gate(evals, grid, cm.point);
        gate = chosen.surface_point;
        plan.status = PlanStatus::ok;
        plan.gate_point = gate;
        plan.chosen_node = chosen.id;
        plan.distance_to_cm = chosen.distance_to_cm;
    }

    plan.flow_length = flow_length_proxy(mesh, gate);
    plan.pressure_drop = pressure_drop(material.mu_opt, *plan.flow_length,
                                       plan.front_velocity, config.part_thickness);
    return plan;
}

} // namespace moldgate
