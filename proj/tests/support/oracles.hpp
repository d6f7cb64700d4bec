#pragma once

// Independent oracles for test assertions. These deliberately take different
// algebraic routes than the library (Heron areas, direct sampling), so
// agreement is meaningful.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <moldgate/mesh.hpp>

namespace oracles {

using moldgate::TriangleMesh;
using moldgate::Vec3;

// Triangle area via Heron's formula (numerically stable Kahan ordering).
inline double heron_area(const Vec3& v1, const Vec3& v2, const Vec3& v3) {
    double a = moldgate::distance(v2, v3);
    double b = moldgate::distance(v1, v3);
    double c = moldgate::distance(v1, v2);
    if (a < b) std::swap(a, b);
    if (b < c) std::swap(b, c);
    if (a < b) std::swap(a, b);
    const double term = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    return term > 0.0 ? 0.25 * std::sqrt(term) : 0.0;
}

struct McEstimate {
    Vec3 mean;
    Vec3 standard_error; // per component
};

// Monte-Carlo surface centroid: samples points uniformly over the surface
// (facets weighted by Heron area, uniform barycentric sampling) and averages.
inline McEstimate mc_surface_centroid(const TriangleMesh& mesh, std::size_t samples, unsigned seed) {
    std::vector<double> weights;
    weights.reserve(mesh.facets.size());
    for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
        weights.push_back(heron_area(mesh.facet_vertex(f, 0), mesh.facet_vertex(f, 1), mesh.facet_vertex(f, 2)));
    }
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    Vec3 sum{0, 0, 0};
    Vec3 sum_sq{0, 0, 0};
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t f = pick(rng);
        const Vec3& a = mesh.facet_vertex(f, 0);
        const Vec3& b = mesh.facet_vertex(f, 1);
        const Vec3& c = mesh.facet_vertex(f, 2);
        const double r1 = std::sqrt(uni(rng));
        const double r2 = uni(rng);
        const Vec3 p = a * (1.0 - r1) + b * (r1 * (1.0 - r2)) + c * (r1 * r2);
        sum += p;
        sum_sq += Vec3{p.x * p.x, p.y * p.y, p.z * p.z};
    }
    const double n = static_cast<double>(samples);
    const Vec3 mean = sum / n;
    Vec3 se;
    for (int k = 0; k < 3; ++k) {
        const double var = std::max(0.0, sum_sq[k] / n - mean[k] * mean[k]);
        se[k] = std::sqrt(var / n);
    }
    return {mean, se};
}

// Row-based 3x3 matrix, just enough for equivariance tests.
struct Mat3 {
    std::array<Vec3, 3> rows;
    Vec3 apply(const Vec3& v) const {
        return {moldgate::dot(rows[0], v), moldgate::dot(rows[1], v), moldgate::dot(rows[2], v)};
    }
};

inline Mat3 rotation_about_axis(const Vec3& axis, double angle) {
    const Vec3 u = moldgate::normalized(axis);
    const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
    return {{Vec3{t * u.x * u.x + c, t * u.x * u.y - s * u.z, t * u.x * u.z + s * u.y},
             Vec3{t * u.x * u.y + s * u.z, t * u.y * u.y + c, t * u.y * u.z - s * u.x},
             Vec3{t * u.x * u.z - s * u.y, t * u.y * u.z + s * u.x, t * u.z * u.z + c}}};
}

inline TriangleMesh rotated(const TriangleMesh& mesh, const Mat3& rot) {
    TriangleMesh out = mesh;
    for (Vec3& v : out.vertices) v = rot.apply(v);
    for (auto& f : out.facets) f.normal = rot.apply(f.normal);
    return out;
}

// Rotates a mesh by exactly 90 degrees about +Z around a pivot, using exact
// integer-like arithmetic (x, y) -> (-y, x) so coordinates stay bit-clean.
inline TriangleMesh rotated_90_about_z(const TriangleMesh& mesh, const Vec3& pivot) {
    TriangleMesh out = mesh;
    for (Vec3& v : out.vertices) {
        const double dx = v.x - pivot.x, dy = v.y - pivot.y;
        v = Vec3{pivot.x - dy, pivot.y + dx, v.z};
    }
    for (auto& f : out.facets) {
        f.normal = Vec3{-f.normal.y, f.normal.x, f.normal.z};
    }
    return out;
}

inline Vec3 rotate_point_90_about_z(const Vec3& p, const Vec3& pivot) {
    const double dx = p.x - pivot.x, dy = p.y - pivot.y;
    return {pivot.x - dy, pivot.y + dx, p.z};
}

// Minimal binary little-endian PLY reader covering the layout the exporter
// writes; used to verify exports load and carry the expected counts.
struct PlyContents {
    std::size_t vertex_count = 0;
    std::size_t face_count = 0;
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint8_t, 3>> colors;
    std::vector<std::array<std::int32_t, 3>> faces;
};

inline PlyContents read_ply(const std::string& bytes) {
    PlyContents out;
    const std::string end_marker = "end_header\n";
    const std::size_t header_end = bytes.find(end_marker);
    if (header_end == std::string::npos) throw std::runtime_error("ply: missing end_header");
    std::istringstream header(bytes.substr(0, header_end));
    std::string line;
    std::getline(header, line);
    if (line != "ply") throw std::runtime_error("ply: bad magic");
    bool little_endian = false;
    while (std::getline(header, line)) {
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "format") {
            std::string fmt;
            ls >> fmt;
            little_endian = fmt == "binary_little_endian";
        } else if (kw == "element") {
            std::string what;
            std::size_t n;
            ls >> what >> n;
            if (what == "vertex") out.vertex_count = n;
            if (what == "face") out.face_count = n;
        }
    }
    if (!little_endian) throw std::runtime_error("ply: expected binary_little_endian");

    const char* p = bytes.data() + header_end + end_marker.size();
    const char* end = bytes.data() + bytes.size();
    auto need = [&](std::size_t n) {
        if (p + n > end) throw std::runtime_error("ply: truncated payload");
    };
    for (std::size_t v = 0; v < out.vertex_count; ++v) {
        need(15);
        float xyz[3];
        std::memcpy(xyz, p, 12);
        out.vertices.push_back({xyz[0], xyz[1], xyz[2]});
        out.colors.push_back({static_cast<std::uint8_t>(p[12]), static_cast<std::uint8_t>(p[13]),
                              static_cast<std::uint8_t>(p[14])});
        p += 15;
    }
    for (std::size_t f = 0; f < out.face_count; ++f) {
        need(13);
        if (*p != 3) throw std::runtime_error("ply: non-triangle face");
        ++p;
        std::int32_t idx[3];
        std::memcpy(idx, p, 12);
        out.faces.push_back({idx[0], idx[1], idx[2]});
        p += 12;
    }
    if (p != end) throw std::runtime_error("ply: trailing bytes");
    return out;
}

} // namespace oracles
