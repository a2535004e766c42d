// Command-line front end: subdivide, quality, verify, compare, demo.
//
// Meshes are read from --input (or stdin when omitted or "-") and written to
// --output (or stdout). Exit status: 0 ok, 1 verification failure, 2 usage or
// input error.

#include <freudenthal/freudenthal.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace freudenthal;
using nlohmann::ordered_json;

namespace {

constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_source(const std::string& path) {
    if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), {}};
}

void write_sink(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw InputError("cannot write " + path);
}

Complex load(const std::string& path) { return import_mesh(read_source(path)); }

void require_valid(const Complex& R) {
    const auto violations = validate_complex(R);
    if (!violations.empty()) throw ComplexError(violations.front());
}

std::string decimal(const Rational& q) {
    std::ostringstream out;
    out << std::setprecision(12) << to_double(q);
    return out.str();
}

std::string signature_text(const Signature& s) {
    std::string out = "[";
    for (std::size_t k = 0; k < s.size(); ++k) out += (k ? ", " : "") + to_string(s[k]);
    return out + "]";
}

ordered_json exact(const Rational& q) { return {{"exact", to_string(q)}, {"decimal", to_double(q)}}; }

// quality --------------------------------------------------------------------

ordered_json signature_json(const Signature& sig) {
    ordered_json s = ordered_json::array();
    for (const auto& x : sig) s.push_back(to_string(x));
    return s;
}

int run_quality(const std::string& input, int depth, bool json) {
    Complex R = load(input);
    require_valid(R);
    ordered_json generations = ordered_json::array();
    for (int k = 0;; ++k) {
        const auto report = quality_report(R);
        if (json) {
            ordered_json census = ordered_json::array();
            for (const auto& [sig, count] : report.census) census.push_back({{"signature", signature_json(sig)}, {"count", count}});
            generations.push_back({{"generation", R.generation},
                                   {"cells", R.cells.size()},
                                   {"max_flatness_sq", exact(report.max_flatness_sq)},
                                   {"max_flatness", flatness_decimal(report.max_flatness_sq)},
                                   {"census", census}});
        } else {
            std::cout << "generation " << R.generation << ": " << R.cells.size() << " cells, max q^2 = " << to_string(report.max_flatness_sq)
                      << " (" << decimal(report.max_flatness_sq) << "), " << report.census.size() << " signature classes\n";
            for (const auto& [sig, count] : report.census) std::cout << "  " << std::setw(8) << count << "  " << signature_text(sig) << '\n';
        }
        if (k == depth) break;
        R = subdivide_complex(R);
    }
    if (json) std::cout << ordered_json{{"generations", generations}}.dump(2) << '\n';
    return 0;
}

// verify ---------------------------------------------------------------------

struct Check {
    std::string name;
    bool passed;
    std::string detail;
};

std::vector<Point> frame_edges(const std::vector<Point>& T) {
    std::vector<Point> x;
    for (std::size_t i = 1; i < T.size(); ++i) x.push_back(sub(T[i], T[i - 1]));
    return x;
}

std::vector<Check> verify_checks(const Complex& R, std::size_t samples, std::uint64_t seed) {
    std::vector<Check> checks;
    const auto violations = validate_complex(R);
    checks.push_back({"input complex", violations.empty(), violations.empty() ? "valid" : violations.front().message});
    if (!violations.empty()) return checks;

    const int r = R.dimension;
    const auto refined = subdivide_complex(R);
    const auto refined_violations = validate_complex(refined);
    checks.push_back({"subdivided complex", refined_violations.empty(),
                      std::to_string(refined.cells.size()) + " cells" +
                          (refined_violations.empty() ? "" : ": " + refined_violations.front().message)});

    const std::size_t per_cell = std::max<std::size_t>(1, (samples + R.cells.size() - 1) / R.cells.size());
    std::size_t failed_cells = 0;
    std::string first_failure;
    for (std::size_t c = 0; c < R.cells.size(); ++c) {
        const auto T = R.cell_points(c);
        const auto res = subdivide_simplex(T);
        std::vector<std::vector<Point>> kids;
        for (std::size_t k = 0; k < res.children.size(); ++k) kids.push_back(res.child_points(k));
        const auto report = partition_check(T, kids, per_cell, seed + c);
        if (!report.passed()) {
            if (!failed_cells) first_failure = "cell " + std::to_string(c) + ": " + report.failures.front();
            ++failed_cells;
        }
    }
    checks.push_back({"children partition each cell", failed_cells == 0,
                      failed_cells ? first_failure : std::to_string(R.cells.size()) + " cells, " + std::to_string(per_cell) + " samples each"});

    if (r <= 6) {
        const auto eq = enumeration_equivalence(r);
        checks.push_back({"generator equivalence", eq.passed(),
                          eq.passed() ? std::to_string(eq.from_counting.size()) + " children agree" : eq.failures.front()});
    }

    const auto T0 = R.cell_points(0);
    if (T0.front().size() == static_cast<std::size_t>(r)) {
        const auto tiling = cube_tiling_check(T0.front(), frame_edges(T0), samples, seed);
        checks.push_back({"conjugates tile the parallelepiped", tiling.passed(),
                          std::to_string(tiling.conjugates) + " conjugates, " + std::to_string(tiling.uncovered) + " uncovered, " +
                              std::to_string(tiling.interior_double_cover) + " interior overlaps"});
    }
    const std::size_t per_conjugate = std::max<std::size_t>(1, samples / static_cast<std::size_t>(factorial(r)));
    const auto agreement = chain_agreement_check(T0.front(), frame_edges(T0), per_conjugate, seed);
    checks.push_back({"chain and hull membership agree", agreement.passed(),
                      std::to_string(agreement.points) + " points, " + std::to_string(agreement.disagreements) + " disagreements"});
    return checks;
}

int run_verify(const std::string& input, std::size_t samples, std::uint64_t seed, bool json) {
    std::vector<Check> checks;
    try {
        checks = verify_checks(load(input), samples, seed);
    } catch (const ComplexError& e) {
        // OFF input is validated while loading; report it like any other check
        checks = {{"input complex", false, e.what()}};
    }
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    if (json) {
        ordered_json arr = ordered_json::array();
        for (const auto& c : checks) arr.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        std::cout << ordered_json{{"passed", ok}, {"samples", samples}, {"seed", seed}, {"checks", arr}}.dump(2) << '\n';
    } else {
        for (const auto& c : checks) std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name << " (" << c.detail << ")\n";
    }
    if (!ok) std::cerr << "verification failed\n";
    return ok ? 0 : exit_failed;
}

// compare --------------------------------------------------------------------

int run_compare(const std::string& input, int depth, bool json) {
    Complex R = load(input);
    require_valid(R);
    std::vector<std::vector<RationalPoint>> bary;
    for (std::size_t c = 0; c < R.cells.size(); ++c) {
        std::vector<RationalPoint> cell;
        for (const auto& p : R.cell_points(c)) cell.push_back(to_rational(p));
        bary.push_back(std::move(cell));
    }
    struct Row {
        std::size_t f_cells, b_cells;
        RationalSq f, b;
    };
    std::vector<Row> rows;
    for (int k = 0;; ++k) {
        rows.push_back({R.cells.size(), bary.size(), quality_report(R).max_flatness_sq, quality_report(bary).max_flatness_sq});
        if (k == depth) break;
        R = subdivide_complex(R);
        std::vector<std::vector<RationalPoint>> next;
        for (const auto& c : bary)
            for (auto& child : barycentric_subdivide(c).children) next.push_back(std::move(child));
        bary = std::move(next);
    }
    if (json) {
        ordered_json arr = ordered_json::array();
        for (std::size_t k = 0; k < rows.size(); ++k)
            arr.push_back({{"depth", k},
                           {"freudenthal", {{"cells", rows[k].f_cells}, {"max_flatness_sq", exact(rows[k].f)}}},
                           {"barycentric", {{"cells", rows[k].b_cells}, {"max_flatness_sq", exact(rows[k].b)}}}});
        std::cout << ordered_json{{"rows", arr}}.dump(2) << '\n';
        return 0;
    }
    const auto cell = [](const Rational& q) { return to_string(q) + (denominator(q) == 1 ? "" : " (" + decimal(q) + ")"); };
    std::cout << std::left << std::setw(7) << "depth" << std::setw(10) << "cells" << std::setw(24) << "freudenthal max q^2" << std::setw(10)
              << "cells" << "barycentric max q^2\n";
    for (std::size_t k = 0; k < rows.size(); ++k)
        std::cout << std::setw(7) << k << std::setw(10) << rows[k].f_cells << std::setw(24) << cell(rows[k].f) << std::setw(10) << rows[k].b_cells
                  << cell(rows[k].b) << '\n';
    return 0;
}

// subdivide / demo -----------------------------------------------------------

int run_subdivide(const std::string& input, int depth, const std::string& output, const std::string& format, bool json) {
    const auto fmt = parse_format(format);
    Complex R = load(input);
    require_valid(R);
    R = iterate_subdivision(R, depth);
    write_sink(output, export_mesh(R, fmt).payload);
    const bool to_stdout = output.empty() || output == "-";
    if (json && !to_stdout) {
        std::cout << ordered_json{{"output", output},
                                  {"format", format},
                                  {"generation", R.generation},
                                  {"vertices", R.vertices.size()},
                                  {"cells", R.cells.size()}}
                         .dump(2)
                  << '\n';
    } else if (!to_stdout) {
        std::cout << "wrote " << output << ": generation " << R.generation << ", " << R.vertices.size() << " vertices, " << R.cells.size()
                  << " cells\n";
    }
    return 0;
}

int run_demo(int r, const std::string& output, const std::string& format) {
    write_sink(output, export_mesh(standard_simplex(r), parse_format(format)).payload);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Freudenthal subdivision of simplices and simplicial complexes"};
    app.require_subcommand(1);

    std::string input, output, format = "json";
    int depth = 0;
    int dim = 2;
    std::size_t samples = 10000;
    std::uint64_t seed = 7;
    bool json = false;

    const auto add_input = [&](CLI::App* sub) { sub->add_option("--input,-i", input, "mesh file (JSON or OFF); stdin if omitted"); };
    const auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", json, "machine-readable output"); };
    const auto formats = CLI::IsMember({"off", "vtk", "json"});

    auto* subdivide = app.add_subcommand("subdivide", "refine a complex k times");
    add_input(subdivide);
    subdivide->add_option("--depth,-k", depth, "number of subdivision rounds")->check(CLI::NonNegativeNumber);
    subdivide->add_option("--output,-o", output, "output file; stdout if omitted");
    subdivide->add_option("--format,-f", format, "off, vtk or json")->check(formats);
    add_json(subdivide);

    auto* quality = app.add_subcommand("quality", "flatness and signature census per generation");
    add_input(quality);
    quality->add_option("--depth,-k", depth, "also report generations 1..k")->check(CLI::NonNegativeNumber);
    add_json(quality);

    auto* verify = app.add_subcommand("verify", "run the brute-force oracle suite");
    add_input(verify);
    verify->add_option("--samples,-n", samples, "sample points per check")->check(CLI::PositiveNumber);
    verify->add_option("--seed,-s", seed, "random seed");
    add_json(verify);

    auto* compare = app.add_subcommand("compare", "Freudenthal versus barycentric max q^2");
    add_input(compare);
    compare->add_option("--depth,-k", depth, "number of subdivision rounds")->check(CLI::NonNegativeNumber);
    add_json(compare);

    auto* demo = app.add_subcommand("demo", "emit the standard simplex of a dimension");
    demo->add_option("--dim,-r", dim, "dimension")->check(CLI::Range(1, 64));
    demo->add_option("--output,-o", output, "output file; stdout if omitted");
    demo->add_option("--format,-f", format, "off, vtk or json")->check(formats);
    demo->add_flag("--json", json, "same as --format json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : exit_usage;
    }

    try {
        if (*subdivide) return run_subdivide(input, depth, output, format, json);
        if (*quality) return run_quality(input, depth, json);
        if (*verify) return run_verify(input, samples, seed, json);
        if (*compare) return run_compare(input, depth, json);
        if (*demo) return run_demo(dim, output, json ? "json" : format);
    } catch (const ComplexError& e) {
        std::cerr << "error: invalid complex: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
