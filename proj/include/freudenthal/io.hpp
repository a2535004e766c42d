#pragma once

// Mesh documents: lossless JSON, plus OFF and legacy VTK for viewing.
//
// JSON stores every coordinate as a string "m" or "m/2^e" so no value ever
// passes through binary floating point. OFF and VTK print the exact decimal
// expansion of each dyadic coordinate.

#include "complex.hpp"
#include "kernel.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace freudenthal {

enum class MeshFormat { off, vtk, json };

struct MeshDocument {
    MeshFormat format;
    std::string payload;
};

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline MeshFormat parse_format(std::string_view name) {
    if (name == "off") return MeshFormat::off;
    if (name == "vtk") return MeshFormat::vtk;
    if (name == "json") return MeshFormat::json;
    throw FormatError("unknown mesh format: " + std::string(name));
}

namespace detail {

inline nlohmann::ordered_json point_to_json(const Point& p) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : p) arr.push_back(c.to_string());
    return arr;
}

inline std::string export_json(const Complex& R) {
    nlohmann::ordered_json doc;
    doc["format"] = "freudenthal-complex";
    doc["version"] = 1;
    doc["dimension"] = R.dimension;
    doc["ambient_dimension"] = R.ambient_dimension();
    doc["generation"] = R.generation;
    auto verts = nlohmann::ordered_json::array();
    for (const auto& v : R.vertices) verts.push_back(point_to_json(v));
    doc["vertices"] = std::move(verts);
    auto cells = nlohmann::ordered_json::array();
    for (const auto& c : R.cells) cells.push_back(c.vertex_ids);
    doc["cells"] = std::move(cells);
    if (!R.vertex_parents.empty()) {
        auto parents = nlohmann::ordered_json::array();
        for (const auto& [a, b] : R.vertex_parents) parents.push_back({a, b});
        doc["vertex_parents"] = std::move(parents);
    }
    if (!R.cell_provenance.empty()) {
        auto prov = nlohmann::ordered_json::array();
        for (const auto& p : R.cell_provenance) {
            nlohmann::ordered_json entry;
            entry["parent"] = p.parent_cell;
            entry["sigma"] = p.key.sigma.bits();
            entry["pi"] = p.key.pi.values();
            prov.push_back(std::move(entry));
        }
        doc["cell_provenance"] = std::move(prov);
    }
    return doc.dump(1) + "\n";
}

inline std::string export_off(const Complex& R) {
    std::ostringstream out;
    out << "OFF\n" << R.vertices.size() << ' ' << R.cells.size() << " 0\n";
    for (const auto& v : R.vertices) {
        for (std::size_t c = 0; c < v.size(); ++c) out << (c ? " " : "") << v[c].to_decimal();
        out << '\n';
    }
    for (const auto& cell : R.cells) {
        out << cell.vertex_ids.size();
        for (auto id : cell.vertex_ids) out << ' ' << id;
        out << '\n';
    }
    return out.str();
}

inline int vtk_cell_type(int r) {
    switch (r) {
        case 0: return 1;   // VTK_VERTEX
        case 1: return 3;   // VTK_LINE
        case 2: return 5;   // VTK_TRIANGLE
        case 3: return 10;  // VTK_TETRA
    }
    throw FormatError("unsupported dimension");
}

inline std::string export_vtk(const Complex& R) {
    std::ostringstream out;
    out << "# vtk DataFile Version 3.0\n"
        << "freudenthal complex generation " << R.generation << "\n"
        << "ASCII\n"
        << "DATASET UNSTRUCTURED_GRID\n"
        << "POINTS " << R.vertices.size() << " double\n";
    for (const auto& v : R.vertices) {
        for (std::size_t c = 0; c < 3; ++c) out << (c ? " " : "") << (c < v.size() ? v[c].to_decimal() : "0");
        out << '\n';
    }
    std::size_t total = 0;
    for (const auto& cell : R.cells) total += cell.vertex_ids.size() + 1;
    out << "CELLS " << R.cells.size() << ' ' << total << '\n';
    for (const auto& cell : R.cells) {
        out << cell.vertex_ids.size();
        for (auto id : cell.vertex_ids) out << ' ' << id;
        out << '\n';
    }
    out << "CELL_TYPES " << R.cells.size() << '\n';
    const int type = vtk_cell_type(R.dimension);
    for (std::size_t c = 0; c < R.cells.size(); ++c) out << type << '\n';
    return out.str();
}

/// Decimal literal such as "-0.375" or "2" to an exact dyadic.
inline Dyadic parse_decimal(std::string_view text) {
    std::string s(text);
    bool negative = false;
    std::size_t k = 0;
    if (k < s.size() && (s[k] == '-' || s[k] == '+')) negative = s[k++] == '-';
    std::string digits;
    std::size_t frac = 0;
    bool seen_dot = false;
    for (; k < s.size(); ++k) {
        if (s[k] == '.' && !seen_dot) {
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(s[k]))) {
            digits += s[k];
            frac += seen_dot;
        } else {
            throw FormatError("bad coordinate: " + s);
        }
    }
    if (digits.empty()) throw FormatError("bad coordinate: " + s);
    // a leading zero would make the Integer parser read octal
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    Rational q(Integer(digits), pow(Integer(10), static_cast<unsigned>(frac)));
    const Integer den = denominator(q);
    if ((den & (den - 1)) != 0) throw FormatError("coordinate is not a dyadic rational: " + s);
    const Integer num = negative ? Integer(-numerator(q)) : Integer(numerator(q));
    return Dyadic(num, static_cast<unsigned>(msb(den)));
}

}  // namespace detail

/// Renders a complex. OFF and VTK require ambient dimension <= 3.
inline MeshDocument export_mesh(const Complex& R, MeshFormat format) {
    if (format != MeshFormat::json && (R.ambient_dimension() > 3 || R.dimension > 3))
        throw FormatError("unsupported dimension: OFF/VTK need dimension <= 3, got " + std::to_string(R.ambient_dimension()));
    switch (format) {
        case MeshFormat::off: return {format, detail::export_off(R)};
        case MeshFormat::vtk: return {format, detail::export_vtk(R)};
        case MeshFormat::json: return {format, detail::export_json(R)};
    }
    throw FormatError("unknown mesh format");
}

/// Inverse of the JSON export. Cell ids are kept exactly as written.
inline Complex import_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    try {
        Complex R;
        for (const auto& v : doc.at("vertices")) {
            Point p;
            for (const auto& c : v) p.push_back(c.is_string() ? Dyadic::parse(c.get<std::string>()) : Dyadic(c.get<long long>()));
            R.vertices.push_back(std::move(p));
        }
        for (const auto& c : doc.at("cells")) R.cells.push_back({c.get<std::vector<std::size_t>>()});
        R.dimension = doc.contains("dimension") ? doc["dimension"].get<int>()
                                                : (R.cells.empty() ? 0 : static_cast<int>(R.cells.front().vertex_ids.size()) - 1);
        R.generation = doc.value("generation", 0);
        if (doc.contains("vertex_parents"))
            for (const auto& p : doc["vertex_parents"]) R.vertex_parents.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
        if (doc.contains("cell_provenance"))
            for (const auto& p : doc["cell_provenance"])
                R.cell_provenance.push_back({p.at("parent").get<std::size_t>(),
                                             {SignVector(p.at("sigma").get<std::vector<std::uint8_t>>()),
                                              Permutation(p.at("pi").get<std::vector<int>>())}});
        if (doc.contains("ambient_dimension") && !R.vertices.empty() &&
            doc["ambient_dimension"].get<std::size_t>() != R.ambient_dimension())
            throw FormatError("ambient_dimension does not match vertex coordinates");
        if (R.cells.empty()) throw FormatError("complex has no cells");
        return R;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed complex document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("malformed complex document: ") + e.what());
    }
}

/// OFF with dyadic decimal coordinates; any vertex dimension per line.
inline Complex import_off(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::vector<std::string>> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        for (std::string t; ls >> t;) tokens.push_back(t);
        if (!tokens.empty()) lines.push_back(std::move(tokens));
    }
    if (lines.size() < 2 || lines[0].size() != 1 || lines[0][0] != "OFF") throw FormatError("missing OFF header");
    std::size_t nv = 0;
    std::size_t nc = 0;
    try {
        nv = std::stoul(lines[1].at(0));
        nc = std::stoul(lines[1].at(1));
    } catch (const std::exception&) {
        throw FormatError("bad OFF counts line");
    }
    if (lines.size() < 2 + nv + nc) throw FormatError("OFF file is truncated");
    VertexTable vertices;
    for (std::size_t v = 0; v < nv; ++v) {
        Point p;
        for (const auto& t : lines[2 + v]) p.push_back(detail::parse_decimal(t));
        vertices.push_back(std::move(p));
    }
    std::vector<std::vector<std::size_t>> cells;
    for (std::size_t c = 0; c < nc; ++c) {
        const auto& t = lines[2 + nv + c];
        std::vector<std::size_t> ids;
        try {
            const std::size_t n = std::stoul(t.at(0));
            for (std::size_t k = 1; k <= n; ++k) ids.push_back(std::stoul(t.at(k)));
        } catch (const std::exception&) {
            throw FormatError("bad OFF cell line");
        }
        cells.push_back(std::move(ids));
    }
    return build_complex(std::move(vertices), std::move(cells));
}

/// Chooses the importer from the content: OFF if the first token is "OFF".
inline Complex import_mesh(std::string_view text) {
    std::size_t k = 0;
    while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
    if (text.substr(k).starts_with("OFF")) return import_off(text);
    return import_json(text);
}

}  // namespace freudenthal
