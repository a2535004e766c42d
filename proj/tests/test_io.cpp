#include <catch_amalgamated.hpp>

#include <freudenthal/io.hpp>

using namespace freudenthal;

namespace {

Complex triangle() { return build_complex({{0, 0}, {1, 0}, {1, 1}}, {{0, 1, 2}}); }

Complex two_tets() {
    return build_complex({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}, {{0, 1, 2, 3}, {1, 2, 3, 4}});
}

}  // namespace

TEST_CASE("OFF export of the unit triangle", "[io]") {
    CHECK(export_mesh(triangle(), MeshFormat::off).payload == "OFF\n3 1 0\n0 0\n1 0\n1 1\n3 0 1 2\n");
}

TEST_CASE("OFF prints exact decimals", "[io]") {
    const auto R = subdivide_complex(triangle());
    const auto off = export_mesh(R, MeshFormat::off).payload;
    CHECK(off.find("0.5 0.5\n") != std::string::npos);
    CHECK(import_off(off) == [&] {
        auto plain = R;
        plain.generation = 0;
        plain.vertex_parents.clear();
        plain.cell_provenance.clear();
        return plain;
    }());
}

TEST_CASE("VTK export", "[io]") {
    const auto vtk = export_mesh(triangle(), MeshFormat::vtk).payload;
    CHECK(vtk.starts_with("# vtk DataFile Version 3.0\n"));
    CHECK(vtk.find("DATASET UNSTRUCTURED_GRID\n") != std::string::npos);
    CHECK(vtk.find("POINTS 3 double\n0 0 0\n1 0 0\n1 1 0\n") != std::string::npos);
    CHECK(vtk.find("CELLS 1 4\n3 0 1 2\n") != std::string::npos);
    CHECK(vtk.ends_with("CELL_TYPES 1\n5\n"));
    CHECK(export_mesh(two_tets(), MeshFormat::vtk).payload.ends_with("10\n10\n"));
}

TEST_CASE("dimension above three is rejected for OFF and VTK", "[io]") {
    const auto R = standard_simplex(4);
    for (auto f : {MeshFormat::off, MeshFormat::vtk}) {
        try {
            export_mesh(R, f);
            FAIL("4-dimensional export accepted");
        } catch (const FormatError& e) {
            CHECK(std::string(e.what()).find("unsupported dimension") != std::string::npos);
        }
    }
    CHECK_NOTHROW(export_mesh(R, MeshFormat::json));
}

TEST_CASE("JSON round trip is lossless", "[io]") {
    for (int depth : {0, 2, 3}) {
        const auto R = iterate_subdivision(two_tets(), depth);
        const auto text = export_mesh(R, MeshFormat::json).payload;
        const auto back = import_json(text);
        CHECK(back == R);
        CHECK(export_mesh(back, MeshFormat::json).payload == text);
    }
    const auto deep = iterate_subdivision(standard_simplex(4), 2);
    CHECK(import_mesh(export_mesh(deep, MeshFormat::json).payload) == deep);
}

TEST_CASE("JSON layout", "[io]") {
    const auto doc = nlohmann::json::parse(export_mesh(subdivide_complex(triangle()), MeshFormat::json).payload);
    CHECK(doc["format"] == "freudenthal-complex");
    CHECK(doc["dimension"] == 2);
    CHECK(doc["ambient_dimension"] == 2);
    CHECK(doc["generation"] == 1);
    CHECK(doc["vertices"][1] == nlohmann::json::array({"1/2^1", "0"}));
    CHECK(doc["cells"].size() == 4);
    CHECK(doc["vertex_parents"][1] == nlohmann::json::array({0, 1}));
    CHECK(doc["cell_provenance"][0]["parent"] == 0);
}

TEST_CASE("exports are byte-identical across runs", "[io]") {
    for (auto f : {MeshFormat::off, MeshFormat::vtk, MeshFormat::json})
        CHECK(export_mesh(iterate_subdivision(two_tets(), 2), f).payload == export_mesh(iterate_subdivision(two_tets(), 2), f).payload);
}

TEST_CASE("import_mesh detects the format", "[io]") {
    CHECK(import_mesh("  OFF\n3 1 0\n0 0\n1 0\n1 1\n3 0 1 2\n") == triangle());
    CHECK(import_mesh(R"({"vertices": [[0, 0], ["1", "0"], [1, 1]], "cells": [[0, 1, 2]]})") == triangle());
}

TEST_CASE("parse_format", "[io]") {
    CHECK(parse_format("off") == MeshFormat::off);
    CHECK(parse_format("json") == MeshFormat::json);
    CHECK_THROWS_AS(parse_format("stl"), FormatError);
}

TEST_CASE("malformed input", "[io]") {
    CHECK_THROWS_AS(import_json("{"), FormatError);
    CHECK_THROWS_AS(import_json(R"({"cells": [[0, 1]]})"), FormatError);
    CHECK_THROWS_AS(import_json(R"({"vertices": [["1/3"], ["0"]], "cells": [[0, 1]]})"), FormatError);
    CHECK_THROWS_AS(import_json(R"({"vertices": [[0], [1]], "cells": []})"), FormatError);
    CHECK_THROWS_AS(import_json(R"({"vertices": [[0], [1]], "ambient_dimension": 2, "cells": [[0, 1]]})"), FormatError);

    CHECK_THROWS_AS(import_off("OFF\n3 1 0\n0 0\n1 0\n"), FormatError);
    CHECK_THROWS_AS(import_off("PLY\n3 1 0\n0 0\n1 0\n1 1\n3 0 1 2\n"), FormatError);
    CHECK_THROWS_AS(import_off("OFF\n3 1 0\n0 0\n0.1 0\n1 1\n3 0 1 2\n"), FormatError);
    CHECK_THROWS_AS(import_off("OFF\n3 1 0\n0 0\n1 0\n1 x\n3 0 1 2\n"), FormatError);
    CHECK_THROWS_AS(import_off("OFF\nthree 1 0\n"), FormatError);
    // geometric problems surface from build_complex
    CHECK_THROWS_AS(import_off("OFF\n3 1 0\n0 0\n1 0\n2 0\n3 0 1 2\n"), ComplexError);
    CHECK_THROWS_AS(import_off("OFF\n3 1 0\n0 0\n1 0\n1 1\n3 0 1 5\n"), ComplexError);

    CHECK(detail::parse_decimal("-0.375") == Dyadic(-3, 3));
    CHECK(detail::parse_decimal("+2") == Dyadic(2));
    CHECK_THROWS_AS(detail::parse_decimal("1.2.3"), FormatError);
    CHECK_THROWS_AS(detail::parse_decimal("-"), FormatError);
}
