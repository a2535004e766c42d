#include <catch_amalgamated.hpp>

#include <freudenthal/oracle.hpp>

using namespace freudenthal;

namespace {

const std::vector<Point> right_triangle{{0, 0}, {1, 0}, {1, 1}};

std::vector<Point> unit_edges(int r) {
    std::vector<Point> e(r, Point(r, Dyadic(0)));
    for (int k = 0; k < r; ++k) e[k][k] = 1;
    return e;
}

std::vector<std::vector<Point>> z_children(const std::vector<Point>& T) {
    const auto res = subdivide_simplex(T);
    std::vector<std::vector<Point>> kids;
    for (std::size_t c = 0; c < res.children.size(); ++c) kids.push_back(res.child_points(c));
    return kids;
}

}  // namespace

TEST_CASE("point_in_simplex", "[oracle]") {
    const std::vector<Point> tri{{0, 0}, {3, 0}, {0, 3}};
    const auto centroid = point_in_simplex(Point{1, 1}, tri);
    CHECK(centroid.status == Membership::interior);
    CHECK(centroid.coordinates == std::vector<Rational>{Rational(1, 3), Rational(1, 3), Rational(1, 3)});
    CHECK(point_in_simplex(Point{3, 0}, tri).status == Membership::boundary);
    CHECK(point_in_simplex(Point{2, 0}, right_triangle).status == Membership::outside);
    CHECK(point_in_simplex(Point{0, 0, 1}, std::vector<Point>{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}}).status == Membership::not_in_affine_hull);
    CHECK_THROWS_AS(point_in_simplex(Point{0, 0}, std::vector<Point>{{0, 0}, {1, 1}, {2, 2}}), DegenerateSimplex);

    const SimplexLocator fast(tri);
    CHECK(fast.classify(Point{1, 1}) == Membership::interior);
    CHECK(fast.classify(Point{Dyadic(3, 1), Dyadic(3, 1)}) == Membership::boundary);
    CHECK(fast.classify(Point{-1, 0}) == Membership::outside);
    CHECK(fast.locate(Point{1, 1}).coordinates == centroid.coordinates);
}

TEST_CASE("chain_membership", "[oracle]") {
    const Point base{0, 0};
    const auto edges = unit_edges(2);
    const auto id = Permutation::identity(2);
    CHECK(chain_membership(base, base, edges, id));
    CHECK(chain_membership(Point{1, 1}, base, edges, id));
    // alpha_1 = 1/2 < alpha_2 = 3/4 breaks the chain
    CHECK_FALSE(chain_membership(Point{Dyadic(1, 1), Dyadic(3, 2)}, base, edges, id));
    CHECK(chain_membership(Point{Dyadic(1, 1), Dyadic(3, 2)}, base, edges, Permutation({2, 1})));
    CHECK_THROWS_AS(ChainLocator(base, std::vector<Point>{{1, 1}, {2, 2}}, id), DegenerateSimplex);

    // triangle in 3-space exercises the rectangular path
    const std::vector<Point> lifted{{1, 0, 0}, {0, 1, 0}};
    CHECK(chain_membership(Point{Dyadic(3, 2), Dyadic(1, 2), 0}, Point{0, 0, 0}, lifted, id));
    CHECK_FALSE(chain_membership(Point{Dyadic(1, 2), Dyadic(3, 2), 0}, Point{0, 0, 0}, lifted, id));
    CHECK_FALSE(chain_membership(Point{Dyadic(1, 2), 0, 1}, Point{0, 0, 0}, lifted, id));
}

TEST_CASE("hull and chain descriptions agree", "[oracle][property]") {
    for (int r = 1; r <= 3; ++r) {
        const auto report = chain_agreement_check(Point(r, Dyadic(0)), unit_edges(r), 500, 17 + r);
        CHECK(report.disagreements == 0);
        CHECK(report.inside > 0);
        CHECK(report.inside < report.points);
    }
    // skewed frame
    const std::vector<Point> edges{{2, 1, 0}, {0, 1, Dyadic(1, 1)}, {-1, 0, 3}};
    const auto report = chain_agreement_check(Point{1, 1, 1}, edges, 300, 4);
    CHECK(report.passed());
}

TEST_CASE("partition_check passes for Z-children", "[oracle]") {
    const auto report = partition_check(right_triangle, z_children(right_triangle), 10000, 7);
    CHECK(report.passed());
    CHECK(report.equal_volumes);
    CHECK(*report.volume_difference == 0);

    const std::vector<Point> tet{{1, 0, 2}, {3, 1, 0}, {0, 2, 1}, {Dyadic(5, 1), 3, 3}};
    CHECK(partition_check(tet, z_children(tet), 2000, 3).passed());

    // lower-dimensional parent: triangle in 3-space
    const std::vector<Point> lifted{{0, 0, 1}, {1, 0, 0}, {1, 1, 1}};
    const auto lifted_report = partition_check(lifted, z_children(lifted), 500, 5);
    CHECK(lifted_report.passed());
    CHECK(*lifted_report.squared_volume_difference == 0);
}

TEST_CASE("partition_check detects defects", "[oracle]") {
    auto missing = z_children(right_triangle);
    missing.pop_back();
    const auto deficit = partition_check(right_triangle, missing, 2000, 7);
    CHECK_FALSE(deficit.passed());
    CHECK(*deficit.volume_difference == Rational(-1, 8));
    CHECK(deficit.uncovered > 0);

    auto doubled = z_children(right_triangle);
    doubled.push_back(doubled.front());
    const auto overlap = partition_check(right_triangle, doubled, 2000, 7);
    CHECK_FALSE(overlap.passed());
    CHECK(*overlap.volume_difference == Rational(1, 8));
    CHECK(overlap.interior_double_cover > 0);
}

TEST_CASE("partition_check is reproducible", "[oracle]") {
    auto kids = z_children(right_triangle);
    kids.pop_back();
    const auto a = partition_check(right_triangle, kids, 3000, 99);
    const auto b = partition_check(right_triangle, kids, 3000, 99);
    CHECK(a.uncovered == b.uncovered);
    CHECK(a.failures == b.failures);

    DyadicSampler s1(5), s2(5);
    for (int k = 0; k < 50; ++k) CHECK(s1.interior_point(right_triangle) == s2.interior_point(right_triangle));
}

TEST_CASE("sampled interior points are strictly inside", "[oracle][property]") {
    DyadicSampler sampler(1);
    const std::vector<Point> tet{{1, 0, 2}, {3, 1, 0}, {0, 2, 1}, {Dyadic(5, 1), 3, 3}};
    for (int k = 0; k < 200; ++k) CHECK(point_in_simplex(sampler.interior_point(tet), tet).status == Membership::interior);
}

TEST_CASE("cube tiling", "[oracle]") {
    for (int r = 2; r <= 4; ++r) {
        const auto report = cube_tiling_check(Point(r, Dyadic(0)), unit_edges(r), 1000, 11);
        CHECK(report.passed());
        CHECK(report.parallelepiped_volume == 1);
        CHECK(report.boundary_multi_cover > 0);
    }
    const std::vector<Point> edges{{2, 1, 0}, {0, 1, Dyadic(1, 1)}, {-1, 0, 3}};
    const auto skew = cube_tiling_check(Point{1, 1, 1}, edges, 1000, 2);
    CHECK(skew.passed());
    CHECK(skew.conjugate_volume_sum == skew.parallelepiped_volume);
}

TEST_CASE("enumeration equivalence", "[oracle]") {
    const std::vector<std::size_t> expected{0, 2, 4, 8, 16, 32};
    for (int r = 1; r <= 5; ++r) {
        const auto report = enumeration_equivalence(r);
        CHECK(report.passed());
        CHECK(report.from_counting.size() == expected[r]);
        CHECK(report.from_cliques.size() == expected[r]);
    }
    CHECK_THROWS_AS(enumeration_equivalence(7), std::invalid_argument);
}
