#include <catch_amalgamated.hpp>

#include <freudenthal/oracle.hpp>
#include <freudenthal/quality.hpp>
#include <freudenthal/subdivision.hpp>

#include <set>

using namespace freudenthal;

namespace {

std::vector<Point> kuhn(int r) {
    std::vector<Point> v;
    for (int i = 0; i <= r; ++i) {
        Point p(r, Dyadic(0));
        for (int k = 0; k < i; ++k) p[k] = 1;
        v.push_back(p);
    }
    return v;
}

std::vector<Point> corner_simplex(int r) {
    std::vector<Point> v{Point(r, Dyadic(0))};
    for (int k = 0; k < r; ++k) {
        Point p(r, Dyadic(0));
        p[k] = 1;
        v.push_back(p);
    }
    return v;
}

std::set<std::string> label_set(const LabelSequence& l) {
    std::set<std::string> out;
    for (const auto& x : l) out.insert(x.to_string());
    return out;
}

// Brute-force: all (r+1)-subsets of labels whose members are pairwise adjacent.
std::size_t count_full_cliques(int r) {
    const auto all = all_labels(r);
    const std::size_t n = all.size();
    std::size_t count = 0;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (pick.size() == static_cast<std::size_t>(r + 1)) {
            ++count;
            return;
        }
        for (std::size_t k = from; k < n; ++k) {
            bool ok = true;
            for (auto p : pick) ok = ok && labels_adjacent(all[p], all[k]);
            if (!ok) continue;
            pick.push_back(k);
            rec(k + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return count;
}

}  // namespace

TEST_CASE("interval halving", "[subdivision]") {
    const auto res = subdivide_simplex(std::vector<Point>{{0}, {1}});
    REQUIRE(res.children.size() == 2);
    CHECK(res.child_points(0) == std::vector<Point>{{0}, {Dyadic(1, 1)}});
    CHECK(res.child_points(1) == std::vector<Point>{{Dyadic(1, 1)}, {1}});
}

TEST_CASE("unit right triangle children", "[subdivision]") {
    const auto res = subdivide_simplex(kuhn(2));
    REQUIRE(res.children.size() == 4);
    const std::vector<std::set<std::string>> expected{
        {"00", "01", "02"}, {"01", "11", "12"}, {"01", "02", "12"}, {"02", "12", "22"}};
    for (std::size_t c = 0; c < 4; ++c) CHECK(label_set(res.children[c].labels) == expected[c]);
    const auto report = partition_check(kuhn(2), [&] {
        std::vector<std::vector<Point>> kids;
        for (std::size_t c = 0; c < 4; ++c) kids.push_back(res.child_points(c));
        return kids;
    }(), 2000, 1);
    CHECK(report.passed());
}

TEST_CASE("standard tetrahedron children have volume 1/48", "[subdivision]") {
    const auto res = subdivide_simplex(corner_simplex(3));
    REQUIRE(res.children.size() == 8);
    CHECK(volume(corner_simplex(3)) == Rational(1, 6));
    for (std::size_t c = 0; c < 8; ++c) CHECK(volume(res.child_points(c)) == Rational(1, 48));
}

TEST_CASE("degenerate input is rejected", "[subdivision]") {
    CHECK_THROWS_AS(subdivide_simplex(std::vector<Point>{{0, 0}, {1, 1}, {2, 2}}), DegenerateSimplex);
    CHECK_THROWS_AS(barycentric_subdivide(std::vector<Point>{{0, 0}, {1, 1}, {2, 2}}), DegenerateSimplex);
    CHECK_THROWS_AS(subdivide_simplex(std::vector<Point>{{0}}), std::invalid_argument);
}

TEST_CASE("children ordered by sigma as a binary number", "[subdivision]") {
    const auto res = subdivide_simplex(kuhn(4));
    for (std::size_t c = 1; c < res.children.size(); ++c) CHECK(res.children[c - 1].key <= res.children[c].key);
    for (std::size_t c = 1; c < res.children.size(); ++c)
        CHECK(res.children[c - 1].key.sigma.as_binary() <= res.children[c].key.sigma.as_binary());
}

TEST_CASE("subdivision measure, containment and homothety", "[subdivision][property]") {
    const std::vector<std::vector<Point>> parents{
        kuhn(2),
        corner_simplex(3),
        {{1, 0, 2}, {3, 1, 0}, {0, 2, 1}, {Dyadic(5, 1), 3, 3}},
        {{0, 0}, {Dyadic(3, 2), 1}, {-2, 3}},
    };
    for (const auto& T : parents) {
        const int r = static_cast<int>(T.size()) - 1;
        const auto res = subdivide_simplex(T);
        REQUIRE(res.children.size() == (std::size_t{1} << r));
        const Rational v2 = volume_sq(T);
        Rational scale = 1;
        for (int k = 0; k < r; ++k) scale *= 4;

        std::vector<Point> x;
        for (int i = 1; i <= r; ++i) x.push_back(sub(T[i], T[i - 1]));
        std::set<std::vector<Rational>> conj_lengths;
        for (const auto& pi : all_permutations(r)) {
            auto lengths = squared_edge_lengths(std::span<const Point>(conjugate_vertices(T[0], x, pi)));
            for (auto& l : lengths) l /= 4;
            std::sort(lengths.begin(), lengths.end());
            conj_lengths.insert(lengths);
        }

        Rational total = 0;
        for (std::size_t c = 0; c < res.children.size(); ++c) {
            const auto pts = res.child_points(c);
            CHECK(volume_sq(pts) * scale == v2);
            total += volume(pts);
            for (const auto& l : res.children[c].labels) CHECK(res.new_vertices.at(l) == midpoint(T[l.i], T[l.j]));
            for (const auto& p : pts) {
                const auto m = point_in_simplex(p, T);
                CHECK(m.contains());
                for (const auto& lam : m.coordinates) CHECK((lam >= 0 && lam <= 1));
            }
            auto lengths = squared_edge_lengths(std::span<const Point>(pts));
            std::sort(lengths.begin(), lengths.end());
            CHECK(conj_lengths.count(lengths) == 1);
            // labels ascend in i + j
            for (std::size_t k = 1; k < res.children[c].labels.size(); ++k)
                CHECK(res.children[c].labels[k - 1].weight() < res.children[c].labels[k].weight());
        }
        CHECK(total == volume(T));
    }
}

TEST_CASE("labels_adjacent", "[subdivision]") {
    CHECK(labels_adjacent({0, 1}, {1, 2}));
    CHECK_FALSE(labels_adjacent({0, 0}, {1, 1}));
    CHECK(labels_adjacent({0, 2}, {1, 3}));
    CHECK_FALSE(labels_adjacent({0, 1}, {2, 3}));
    CHECK_FALSE(labels_adjacent({1, 2}, {1, 2}));
    CHECK(labels_adjacent({1, 3}, {0, 2}));
}

TEST_CASE("path children", "[subdivision]") {
    const auto p1 = path_children(1);
    REQUIRE(p1.size() == 2);
    CHECK(p1[0] == LabelSequence{{0, 0}, {0, 1}});
    CHECK(p1[1] == LabelSequence{{0, 1}, {1, 1}});

    std::set<std::set<std::string>> two;
    for (const auto& p : path_children(2)) two.insert(label_set(p));
    CHECK(two == std::set<std::set<std::string>>{{"00", "01", "02"}, {"01", "11", "12"}, {"01", "02", "12"}, {"02", "12", "22"}});

    const auto p4 = path_children(4);
    CHECK(p4.size() == 16);
    std::vector<int> by_u(5, 0);
    for (const auto& p : p4) ++by_u[p.front().j];
    CHECK(by_u == std::vector<int>{1, 4, 6, 4, 1});
}

TEST_CASE("clique children", "[subdivision]") {
    const auto c1 = clique_children(1);
    REQUIRE(c1.size() == 2);
    CHECK(c1[0] == LabelSequence{{0, 0}, {0, 1}});
    CHECK(c1[1] == LabelSequence{{0, 1}, {1, 1}});

    auto p2 = path_children(2);
    std::sort(p2.begin(), p2.end());
    CHECK(clique_children(2) == p2);

    const auto c3 = clique_children(3);
    CHECK(c3.size() == 8);
    for (const auto& c : c3) CHECK(c.size() == 4);
}

TEST_CASE("maximal cliques equal the brute-force (r+1)-cliques", "[subdivision][property]") {
    for (int r = 1; r <= 4; ++r) {
        const auto cliques = clique_children(r);
        CHECK(cliques.size() == count_full_cliques(r));
        for (const auto& c : cliques) {
            CHECK(c.size() == static_cast<std::size_t>(r + 1));
            for (std::size_t k = 1; k < c.size(); ++k) CHECK(c[k - 1].weight() < c[k].weight());
            for (std::size_t a = 0; a < c.size(); ++a)
                for (std::size_t b = a + 1; b < c.size(); ++b) CHECK(labels_adjacent(c[a], c[b]));
        }
    }
}

TEST_CASE("barycentric subdivision", "[subdivision]") {
    const auto one = barycentric_subdivide(std::vector<Point>{{0}, {1}});
    REQUIRE(one.children.size() == 2);
    std::set<std::vector<RationalPoint>> halves(one.children.begin(), one.children.end());
    CHECK(halves == std::set<std::vector<RationalPoint>>{{{Rational(0)}, {Rational(1, 2)}}, {{Rational(1)}, {Rational(1, 2)}}});

    const auto T = kuhn(2);
    const auto two = barycentric_subdivide(T);
    REQUIRE(two.children.size() == 6);
    Rational total = 0;
    for (const auto& c : two.children) {
        CHECK(volume(c) == volume(T) / 6);
        total += volume(c);
    }
    CHECK(total == volume(T));

    const auto tet = barycentric_subdivide(corner_simplex(3));
    CHECK(tet.children.size() == 24);
}
