#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "moldgate/rheology.hpp"

namespace moldgate {

// Shipped database: the six case-study rows. Where a material appears twice,
// the second row carries a "-b" suffix so every name stays unique; the plain
// names resolve to the first occurrence.
inline const std::vector<MaterialParams>& builtin_materials() {
    static const std::vector<MaterialParams> rows = {
        {"PP", 0.2718, 230.0, 50.0, 10000.0, 9.88, 0.15},
        {"PP-b", 0.2718, 230.0, 50.0, 10000.0, 9.88, 0.15},
        {"ABS", 0.2354, 230.0, 50.0, 5000.0, 30.93, 0.18},
        {"ABS-b", 0.2354, 230.0, 50.0, 5000.0, 30.96, 0.18},
        {"PC", 0.1869, 305.0, 95.0, 8000.0, 42.85, 0.24},
        {"PC-b", 0.1869, 305.0, 95.0, 8000.0, 42.85, 0.24},
    };
    return rows;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline double parse_material_number(std::string_view value, std::size_t line, std::string_view key) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        std::ostringstream os;
        os << "materials file line " << line << ": invalid number for '" << key << "': '" << value << "'";
        throw MaterialError(os.str());
    }
    return out;
}

} // namespace detail

// Parses the material database text format: blank-line separated records of
// "key = value" lines with the MaterialParams field names
// (name, n, T_melt, T_wall, gamma_opt, mu_opt, kappa). '#' starts a comment.
inline std::vector<MaterialParams> parse_materials(std::string_view text) {
    std::vector<MaterialParams> out;
    MaterialParams current;
    bool in_record = false;
    unsigned seen = 0; // bitmask over the 7 fields

    auto flush = [&](std::size_t line) {
        if (!in_record) return;
        if (seen != 0x7Fu) {
            std::ostringstream os;
            os << "materials file record ending at line " << line
               << ": incomplete record for '" << current.name
               << "' (need name, n, T_melt, T_wall, gamma_opt, mu_opt, kappa)";
            throw MaterialError(os.str());
        }
        validate_material(current);
        for (const MaterialParams& m : out) {
            if (m.name == current.name) throw MaterialError("duplicate material name '" + current.name + "'");
        }
        out.push_back(current);
        current = MaterialParams{};
        in_record = false;
        seen = 0;
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, (eol == std::string_view::npos ? text.size() : eol) - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) { flush(line_no); continue; }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            std::ostringstream os;
            os << "materials file line " << line_no << ": expected 'key = value', got '" << std::string(line) << "'";
            throw MaterialError(os.str());
        }
        const std::string_view key = detail::trim(line.substr(0, eq));
        const std::string_view value = detail::trim(line.substr(eq + 1));
        in_record = true;
        if (key == "name")            { current.name = std::string(value); seen |= 1u; }
        else if (key == "n")          { current.n = detail::parse_material_number(value, line_no, key); seen |= 2u; }
        else if (key == "T_melt")     { current.t_melt = detail::parse_material_number(value, line_no, key); seen |= 4u; }
        else if (key == "T_wall")     { current.t_wall = detail::parse_material_number(value, line_no, key); seen |= 8u; }
        else if (key == "gamma_opt")  { current.gamma_opt = detail::parse_material_number(value, line_no, key); seen |= 16u; }
        else if (key == "mu_opt")     { current.mu_opt = detail::parse_material_number(value, line_no, key); seen |= 32u; }
        else if (key == "kappa")      { current.kappa = detail::parse_material_number(value, line_no, key); seen |= 64u; }
        else {
            std::ostringstream os;
            os << "materials file line " << line_no << ": unknown key '" << std::string(key) << "'";
            throw MaterialError(os.str());
        }
    }
    flush(line_no);
    if (out.empty()) throw MaterialError("materials file defines no materials");
    return out;
}

inline std::vector<MaterialParams> load_materials(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MaterialError("cannot open materials file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_materials(buf.str());
}

inline std::string list_material_names(const std::vector<MaterialParams>& db) {
    std::string names;
    for (std::size_t i = 0; i < db.size(); ++i) {
        if (i) names += ", ";
        names += db[i].name;
    }
    return names;
}

inline const MaterialParams& find_material(const std::vector<MaterialParams>& db, const std::string& name) {
    for (const MaterialParams& m : db) {
        if (m.name == name) return m;
    }
    throw MaterialError("unknown material '" + name + "'; available: " + list_material_names(db));
}

} // namespace moldgate
