#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "moldgate/gateplan.hpp"
#include "moldgate/version.hpp"

namespace moldgate {

// 64-bit FNV-1a over the raw input bytes; echoed in reports so a result can be
// matched to the exact geometry it was computed from.
inline std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf, 16);
}

struct ReportMetadata {
    std::string input_path;
    std::string input_digest; // fnv1a64 of the raw STL bytes
    std::size_t input_facets = 0;
    std::size_t input_vertices = 0;
    MaterialParams material;
    double duration_s = 0.0;
};

namespace detail {

// Values are rounded to the schema precision before serialization, so the
// canonical JSON encoding prints exactly the intended digits.
inline double round_to(double value, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(value * scale) / scale;
}

constexpr int kLengthDecimals = 4;
constexpr int kPressureDecimals = 3;

inline nlohmann::json length(double mm) { return round_to(mm, kLengthDecimals); }

inline nlohmann::json point(const Vec3& p) {
    return nlohmann::json::array({length(p.x), length(p.y), length(p.z)});
}

} // namespace detail

// Canonical report document: UTF-8 JSON, alphabetically sorted keys, fixed
// numeric precision (lengths 4 decimals, pressures 3). Re-running with the
// echoed inputs reproduces the document byte-identically apart from
// "duration_s".
inline nlohmann::json build_report(const GatePlan& plan, const ReportMetadata& meta) {
    using nlohmann::json;
    json doc;
    doc["schema_version"] = 1;
    doc["tool_version"] = kVersion;
    doc["status"] = to_string(plan.status);
    doc["mode"] = to_string(plan.mode);
    doc["units"] = json{{"length", "mm"}, {"area", "mm^2"}, {"velocity", "mm/s"},
                        {"pressure", "MPa"}, {"temperature", "degC"}, {"duration", "s"}};

    doc["input"] = json{{"file", meta.input_path},
                        {"digest", meta.input_digest},
                        {"facets", meta.input_facets},
                        {"vertices", meta.input_vertices}};

    const MaterialParams& m = meta.material;
    doc["material"] = json{{"name", m.name}, {"n", m.n}, {"T_melt", m.t_melt}, {"T_wall", m.t_wall},
                           {"gamma_opt", m.gamma_opt}, {"mu_opt", m.mu_opt}, {"kappa", m.kappa}};

    doc["C_CM"] = detail::point(plan.center_of_mass);
    doc["total_area"] = detail::round_to(plan.total_area, 4);
    doc["v_bar"] = detail::length(plan.front_velocity);
    doc["R_gate"] = detail::length(plan.gate_radius);
    if (plan.rectangular) {
        doc["rectangular_gate"] = json{{"width", detail::length(plan.rectangular->width)},
                                       {"height", detail::length(plan.rectangular->height)}};
    }

    doc["grid_spacing"] = detail::length(plan.grid_spacing);
    json rejected;
    for (std::size_t r = 1; r < kRejectionReasonCount; ++r) {
        rejected[to_string(static_cast<RejectionReason>(r))] = plan.rejections[r];
    }
    doc["nodes"] = json{{"total", plan.total_nodes},
                        {"feasible", plan.feasible_nodes},
                        {"rejected", rejected}};

    if (plan.status == PlanStatus::ok) {
        doc["C_pointfill"] = detail::point(*plan.gate_point);
        doc["distance_to_cm"] = detail::length(*plan.distance_to_cm);
        if (plan.chosen_node) {
            doc["chosen_node"] = json::array({plan.chosen_node->i, plan.chosen_node->j});
        }
        // Flow length is the farthest-vertex straight-line proxy: an upper
        // bound stand-in for the true (geodesic) melt path.
        doc["flow_length"] = detail::length(*plan.flow_length);
        doc["flow_length_kind"] = "farthest_vertex_upper_bound_proxy";
        doc["delta_P"] = detail::round_to(*plan.pressure_drop, detail::kPressureDecimals);
    }

    doc["duration_s"] = detail::round_to(meta.duration_s, 6);
    return doc;
}

// nlohmann::json objects iterate keys alphabetically, which gives a canonical
// byte encoding; 2-space indentation plus trailing newline.
inline std::string render_report(const GatePlan& plan, const ReportMetadata& meta) {
    return build_report(plan, meta).dump(2) + "\n";
}

} // namespace moldgate
