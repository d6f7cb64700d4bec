#pragma once

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "moldgate/mesh.hpp"

namespace moldgate {

struct StlParseError : std::runtime_error {
    explicit StlParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline float read_f32le(const char* p) {
    std::uint32_t u;
    std::memcpy(&u, p, 4);
    if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap32(u);
    float f;
    std::memcpy(&f, &u, 4);
    return f;
}

inline std::uint32_t read_u32le(const char* p) {
    std::uint32_t u;
    std::memcpy(&u, p, 4);
    if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap32(u);
    return u;
}

inline void write_f32le(std::string& out, float f) {
    std::uint32_t u;
    std::memcpy(&u, &f, 4);
    if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap32(u);
    char b[4];
    std::memcpy(b, &u, 4);
    out.append(b, 4);
}

inline void write_u32le(std::string& out, std::uint32_t u) {
    if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap32(u);
    char b[4];
    std::memcpy(b, &u, 4);
    out.append(b, 4);
}

// Keeps the file normal only when it is already unit length; otherwise the
// winding decides. Degenerate facets get a zero normal and zero weight later.
inline Vec3 resolve_normal(const Vec3& file_normal, const Vec3& v1, const Vec3& v2, const Vec3& v3) {
    const double n = norm(file_normal);
    if (std::isfinite(n) && std::abs(n - 1.0) <= 1e-3) return file_normal / n;
    return geometric_normal(v1, v2, v3);
}

inline void check_finite(const Vec3& p, const std::string& where) {
    if (!is_finite(p)) throw StlParseError("STL parse error: non-finite coordinate in " + where);
}

inline TriangleMesh parse_binary(std::string_view data) {
    if (data.size() < 84) throw StlParseError("binary STL truncated: header shorter than 84 bytes");
    const std::uint32_t count = read_u32le(data.data() + 80);
    if (count == 0) throw StlParseError("STL contains zero facets");
    const std::size_t need = 84 + 50ull * count;
    if (data.size() < need) {
        std::ostringstream os;
        os << "binary STL truncated: header declares " << count << " facets ("
           << need << " bytes) but file has " << data.size() << " bytes";
        throw StlParseError(os.str());
    }
    TriangleMesh mesh;
    mesh.vertices.reserve(3ull * count);
    mesh.facets.reserve(count);
    const char* p = data.data() + 84;
    for (std::uint32_t f = 0; f < count; ++f, p += 50) {
        Vec3 n{read_f32le(p), read_f32le(p + 4), read_f32le(p + 8)};
        Vec3 v[3];
        for (int k = 0; k < 3; ++k) {
            const char* q = p + 12 + 12 * k;
            v[k] = Vec3{read_f32le(q), read_f32le(q + 4), read_f32le(q + 8)};
            check_finite(v[k], "facet " + std::to_string(f));
        }
        const std::uint32_t base = static_cast<std::uint32_t>(mesh.vertices.size());
        mesh.vertices.push_back(v[0]);
        mesh.vertices.push_back(v[1]);
        mesh.vertices.push_back(v[2]);
        mesh.facets.push_back(Facet{{base, base + 1, base + 2}, resolve_normal(n, v[0], v[1], v[2])});
    }
    return mesh;
}

// Line-oriented ASCII tokenizer so syntax errors can cite the line number.
class AsciiCursor {
public:
    explicit AsciiCursor(std::string_view data) : data_(data) {}

    // Next non-empty token; tracks newlines as they are consumed.
    bool next(std::string& tok) {
        while (pos_ < data_.size() && std::isspace(static_cast<unsigned char>(data_[pos_]))) {
            if (data_[pos_] == '\n') ++line_;
            ++pos_;
        }
        if (pos_ >= data_.size()) return false;
        const std::size_t start = pos_;
        while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_]))) ++pos_;
        tok.assign(data_.substr(start, pos_ - start));
        return true;
    }

    std::size_t line() const { return line_; }

private:
    std::string_view data_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

[[noreturn]] inline void ascii_fail(const AsciiCursor& c, const std::string& msg) {
    std::ostringstream os;
    os << "ASCII STL syntax error at line " << c.line() << ": " << msg;
    throw StlParseError(os.str());
}

inline void expect(AsciiCursor& c, std::string_view kw) {
    std::string tok;
    if (!c.next(tok)) ascii_fail(c, "unexpected end of file, expected '" + std::string(kw) + "'");
    if (tok != kw) ascii_fail(c, "expected '" + std::string(kw) + "', got '" + tok + "'");
}

inline double expect_number(AsciiCursor& c) {
    std::string tok;
    if (!c.next(tok)) ascii_fail(c, "unexpected end of file, expected a number");
    double value = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) ascii_fail(c, "invalid number '" + tok + "'");
    return value;
}

inline TriangleMesh parse_ascii(std::string_view data) {
    AsciiCursor c(data);
    std::string tok;
    expect(c, "solid");
    // Optional solid name: consume tokens until "facet" or "endsolid".
    std::string pending;
    while (true) {
        if (!c.next(pending)) ascii_fail(c, "unexpected end of file inside 'solid'");
        if (pending == "facet" || pending == "endsolid") break;
    }
    TriangleMesh mesh;
    while (pending == "facet") {
        expect(c, "normal");
        Vec3 n{expect_number(c), expect_number(c), expect_number(c)};
        expect(c, "outer");
        expect(c, "loop");
        Vec3 v[3];
        for (int k = 0; k < 3; ++k) {
            expect(c, "vertex");
            v[k] = Vec3{expect_number(c), expect_number(c), expect_number(c)};
            if (!is_finite(v[k])) ascii_fail(c, "non-finite vertex coordinate");
        }
        expect(c, "endloop");
        expect(c, "endfacet");
        const std::uint32_t base = static_cast<std::uint32_t>(mesh.vertices.size());
        mesh.vertices.push_back(v[0]);
        mesh.vertices.push_back(v[1]);
        mesh.vertices.push_back(v[2]);
        mesh.facets.push_back(Facet{{base, base + 1, base + 2}, resolve_normal(n, v[0], v[1], v[2])});
        if (!c.next(pending)) ascii_fail(c, "unexpected end of file, expected 'facet' or 'endsolid'");
        if (pending != "facet" && pending != "endsolid") {
            ascii_fail(c, "expected 'facet' or 'endsolid', got '" + pending + "'");
        }
    }
    if (mesh.facets.empty()) throw StlParseError("STL contains zero facets");
    return mesh;
}

inline bool looks_like_ascii(std::string_view data) {
    std::size_t i = 0;
    while (i < data.size() && std::isspace(static_cast<unsigned char>(data[i]))) ++i;
    return data.substr(i, 5) == "solid";
}

} // namespace detail

// Parses ASCII or binary STL from raw bytes. A file is taken as binary when
// its length matches the 84 + 50*count layout exactly; otherwise ASCII is
// attempted when the "solid" keyword leads, and a final binary attempt covers
// keyword-less files so truncation is reported as such.
inline TriangleMesh parse_stl(std::string_view data) {
    if (data.size() >= 84) {
        const std::uint32_t count = detail::read_u32le(data.data() + 80);
        if (data.size() == 84 + 50ull * count && count > 0) return detail::parse_binary(data);
    }
    if (detail::looks_like_ascii(data)) return detail::parse_ascii(data);
    if (data.size() >= 84) return detail::parse_binary(data);
    throw StlParseError("not an STL file: too short for binary and no 'solid' keyword");
}

inline TriangleMesh load_stl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StlParseError("cannot open STL file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string data = buf.str();
    return parse_stl(data);
}

inline std::string write_stl_binary(const TriangleMesh& mesh, std::string_view header_note = "moldgate binary STL") {
    std::string out;
    out.reserve(84 + 50 * mesh.facets.size());
    std::string header(header_note.substr(0, 80));
    header.resize(80, '\0');
    out += header;
    detail::write_u32le(out, static_cast<std::uint32_t>(mesh.facets.size()));
    for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
        const Facet& fc = mesh.facets[f];
        detail::write_f32le(out, static_cast<float>(fc.normal.x));
        detail::write_f32le(out, static_cast<float>(fc.normal.y));
        detail::write_f32le(out, static_cast<float>(fc.normal.z));
        for (int k = 0; k < 3; ++k) {
            const Vec3& v = mesh.facet_vertex(f, k);
            detail::write_f32le(out, static_cast<float>(v.x));
            detail::write_f32le(out, static_cast<float>(v.y));
            detail::write_f32le(out, static_cast<float>(v.z));
        }
        out.push_back('\0');
        out.push_back('\0');
    }
    return out;
}

inline std::string write_stl_ascii(const TriangleMesh& mesh, std::string_view name = "moldgate") {
    std::ostringstream os;
    os.precision(9); // float32 payloads round-trip at 9 significant digits
    os << "solid " << name << "\n";
    for (std::size_t f = 0; f < mesh.facets.size(); ++f) {
        const Facet& fc = mesh.facets[f];
        os << "  facet normal " << fc.normal.x << " " << fc.normal.y << " " << fc.normal.z << "\n";
        os << "    outer loop\n";
        for (int k = 0; k < 3; ++k) {
            const Vec3& v = mesh.facet_vertex(f, k);
            os << "      vertex " << v.x << " " << v.y << " " << v.z << "\n";
        }
        os << "    endloop\n";
        os << "  endfacet\n";
    }
    os << "endsolid " << name << "\n";
    return os.str();
}

inline void save_file(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

} // namespace moldgate
