#pragma once

// Brute-force verification. Nothing here reuses the child generators'
// geometry: membership is decided from the two set descriptions of a
// conjugate simplex (convex hull of vertices, monotone alpha chain) and
// partitions are certified by exact volumes plus seeded dyadic sampling.

#include "arithmetic.hpp"
#include "kernel.hpp"
#include "quality.hpp"
#include "subdivision.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace freudenthal {

enum class Membership { interior, boundary, outside, not_in_affine_hull };

inline const char* to_string(Membership m) {
    switch (m) {
        case Membership::interior: return "interior";
        case Membership::boundary: return "boundary";
        case Membership::outside: return "outside";
        case Membership::not_in_affine_hull: return "not-in-affine-hull";
    }
    return "unknown";
}

struct MembershipResult {
    Membership status = Membership::not_in_affine_hull;
    std::vector<Rational> coordinates;  // empty when not in the affine hull

    bool contains() const { return status == Membership::interior || status == Membership::boundary; }
};

namespace detail {
inline Membership classify_numerators(const std::vector<Integer>& nums) {
    bool zero = false;
    for (const auto& n : nums) {
        if (n.sign() < 0) return Membership::outside;
        zero = zero || n.is_zero();
    }
    return zero ? Membership::boundary : Membership::interior;
}
}  // namespace detail

/// Exact classification of p against conv(simplex).
template <ExactScalar T>
MembershipResult point_in_simplex(const BasicPoint<T>& p, std::span<const BasicPoint<T>> simplex) {
    auto lambda = solve_barycentric(p, simplex);
    if (!lambda) return {};
    MembershipResult out{Membership::interior, std::move(*lambda)};
    for (const auto& l : out.coordinates) {
        if (l < 0) {
            out.status = Membership::outside;
            break;
        }
        if (l == 0) out.status = Membership::boundary;
    }
    return out;
}

template <ExactScalar T>
MembershipResult point_in_simplex(const BasicPoint<T>& p, const std::vector<BasicPoint<T>>& simplex) {
    return point_in_simplex(p, std::span<const BasicPoint<T>>(simplex));
}

/// point_in_simplex prepared for many queries against one simplex.
class SimplexLocator {
public:
    explicit SimplexLocator(std::span<const Point> simplex) : frame_(simplex) {}
    explicit SimplexLocator(const std::vector<Point>& simplex) : frame_(std::span<const Point>(simplex)) {}

    Membership classify(const Point& p) const {
        auto c = frame_.locate(p);
        return c ? detail::classify_numerators(c->numerators) : Membership::not_in_affine_hull;
    }

    MembershipResult locate(const Point& p) const {
        auto c = frame_.locate(p);
        if (!c) return {};
        return {detail::classify_numerators(c->numerators), c->to_rationals()};
    }

private:
    BarycentricFrame frame_;
};

/// Membership in { base + sum alpha_nu x_{p_nu} : 1 >= alpha_1 >= ... >= alpha_r >= 0 }.
///
/// The alpha coefficients come from Cramer's rule on the permuted edge matrix
/// (adjugate precomputed from integer minors), independent of the
/// barycentric solver.
class ChainLocator {
public:
    ChainLocator(Point base, std::span<const Point> edges, const Permutation& pi) : base_(std::move(base)) {
        r_ = edges.size();
        if (static_cast<std::size_t>(pi.size()) != r_) throw std::invalid_argument("chain: permutation length differs from edge count");
        for (int nu = 1; nu <= pi.size(); ++nu) columns_.push_back(edges[pi.at(nu) - 1]);
        for (const auto& c : columns_) detail::require_same_dim(base_.size(), c.size());
        if (r_ == 0) throw DegenerateSimplex("chain: no edges");
        if (base_.size() == r_) prepare_square();
        else if (gram_det(std::span<const Point>(columns_)) == 0) throw DegenerateSimplex("chain: dependent edges");
    }

    /// alpha_nu = numerators[nu-1] / denominator with denominator > 0, or
    /// nullopt outside the affine hull.
    std::optional<std::pair<std::vector<Integer>, Integer>> alphas(const Point& p) const {
        Point v = sub(p, base_);
        if (square_) {
            unsigned e = 0;
            for (const auto& c : v) e = std::max(e, c.exponent());
            std::vector<Integer> w;
            for (const auto& c : v) w.push_back(c.scaled_to(e));
            std::vector<Integer> nums(r_);
            for (std::size_t nu = 0; nu < r_; ++nu) {
                Integer acc = 0;
                for (std::size_t c = 0; c < r_; ++c) acc += adjugate_[nu][c] * w[c];
                nums[nu] = det_sign_ * acc;
            }
            return std::make_pair(std::move(nums), abs_det_ * pow2(e));
        }
        return rectangular_alphas(v);
    }

    bool contains(const Point& p) const {
        auto a = alphas(p);
        if (!a) return false;
        const auto& [nums, den] = *a;
        if (nums.front() > den) return false;
        for (std::size_t nu = 1; nu < nums.size(); ++nu)
            if (nums[nu] > nums[nu - 1]) return false;
        return nums.back().sign() >= 0;
    }

private:
    static detail::IntegerMatrix integer_columns(const std::vector<Point>& cols, std::size_t rows, Integer& scale) {
        unsigned e = 0;
        for (const auto& col : cols)
            for (const auto& c : col) e = std::max(e, c.exponent());
        scale = pow2(e);
        detail::IntegerMatrix m(rows, std::vector<Integer>(cols.size()));
        for (std::size_t k = 0; k < cols.size(); ++k)
            for (std::size_t c = 0; c < rows; ++c) m[c][k] = cols[k][c].scaled_to(e);
        return m;
    }

    static Integer minor_det(const detail::IntegerMatrix& m, std::size_t skip_row, std::size_t skip_col) {
        detail::IntegerMatrix sub;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == skip_row) continue;
            std::vector<Integer> row;
            for (std::size_t j = 0; j < m.size(); ++j)
                if (j != skip_col) row.push_back(m[i][j]);
            sub.push_back(std::move(row));
        }
        return detail::bareiss_det(std::move(sub));
    }

    void prepare_square() {
        Integer scale;
        const auto m = integer_columns(columns_, r_, scale);
        const Integer det = detail::bareiss_det(m);
        if (det.is_zero()) throw DegenerateSimplex("chain: dependent edges");
        det_sign_ = det.sign();
        // alpha = adj(M) (scale v) / det(M); adj(M)[nu][c] = (-1)^(nu+c) minor(c, nu).
        abs_det_ = abs(det);
        adjugate_.assign(r_, std::vector<Integer>(r_));
        for (std::size_t nu = 0; nu < r_; ++nu)
            for (std::size_t c = 0; c < r_; ++c) {
                Integer cof = minor_det(m, c, nu);
                adjugate_[nu][c] = ((nu + c) % 2 == 0) ? cof : Integer(-cof);
            }
        // m was scaled by `scale`, so alpha = adj * (scale * v) / det.
        for (auto& row : adjugate_)
            for (auto& x : row) x *= scale;
        square_ = true;
    }

    // d > r: Cramer's rule on the normal equations, then an exact residual check.
    std::optional<std::pair<std::vector<Integer>, Integer>> rectangular_alphas(const Point& v) const {
        detail::IntegerMatrix gram(r_, std::vector<Integer>(r_));
        std::vector<Rational> rhs(r_);
        std::vector<RationalPoint> cols;
        for (const auto& c : columns_) cols.push_back(to_rational(c));
        const RationalPoint rv = to_rational(v);
        std::vector<Rational> flat;
        detail::RationalMatrix g(r_, std::vector<Rational>(r_));
        for (std::size_t i = 0; i < r_; ++i) {
            for (std::size_t j = 0; j < r_; ++j) g[i][j] = dot(cols[i], cols[j]);
            rhs[i] = dot(cols[i], rv);
            flat.insert(flat.end(), g[i].begin(), g[i].end());
            flat.push_back(rhs[i]);
        }
        const Integer scale = lcm_of_denominators(flat);
        const auto as_int = [&](const Rational& q) { return Integer(numerator(q) * (scale / denominator(q))); };
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < r_; ++j) gram[i][j] = as_int(g[i][j]);
        Integer det = detail::bareiss_det(gram);
        std::vector<Integer> nums(r_);
        for (std::size_t nu = 0; nu < r_; ++nu) {
            auto replaced = gram;
            for (std::size_t i = 0; i < r_; ++i) replaced[i][nu] = as_int(rhs[i]);
            nums[nu] = detail::bareiss_det(std::move(replaced));
        }
        if (det.sign() < 0) {
            det = -det;
            for (auto& n : nums) n = -n;
        }
        for (std::size_t c = 0; c < v.size(); ++c) {
            Rational acc = 0;
            for (std::size_t nu = 0; nu < r_; ++nu) acc += Rational(nums[nu], det) * cols[nu][c];
            if (acc != rv[c]) return std::nullopt;
        }
        return std::make_pair(std::move(nums), std::move(det));
    }

    Point base_;
    std::vector<Point> columns_;
    std::size_t r_ = 0;
    bool square_ = false;
    int det_sign_ = 1;
    Integer abs_det_;
    detail::IntegerMatrix adjugate_;
};

inline bool chain_membership(const Point& p, const Point& base, std::span<const Point> edges, const Permutation& pi) {
    return ChainLocator(base, edges, pi).contains(p);
}

inline bool chain_membership(const Point& p, const Point& base, const std::vector<Point>& edges, const Permutation& pi) {
    return chain_membership(p, base, std::span<const Point>(edges), pi);
}

/// Deterministic dyadic sampling from a 64-bit Mersenne Twister, whose
/// output sequence is fixed by the standard for a given seed.
class DyadicSampler {
public:
    explicit DyadicSampler(std::uint64_t seed) : rng_(seed) {}

    /// Uniform integer in [lo, hi].
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
        const std::uint64_t span = hi - lo + 1;
        const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} / span) * span;
        std::uint64_t x = rng_();
        while (span != 0 && x >= limit) x = rng_();
        return span == 0 ? x : lo + x % span;
    }

    /// n strictly positive weights summing to 2^bits (n <= 2^bits).
    std::vector<std::uint64_t> positive_weights(std::size_t n, unsigned bits) {
        const std::uint64_t total = std::uint64_t{1} << bits;
        std::set<std::uint64_t> cuts;
        while (cuts.size() + 1 < n) cuts.insert(uniform(1, total - 1));
        std::vector<std::uint64_t> w;
        std::uint64_t prev = 0;
        for (auto c : cuts) {
            w.push_back(c - prev);
            prev = c;
        }
        w.push_back(total - prev);
        return w;
    }

    /// Random point with all barycentric weights strictly positive.
    Point interior_point(std::span<const Point> simplex, unsigned bits = 20) {
        const auto w = positive_weights(simplex.size(), bits);
        Point p(simplex[0].size(), Dyadic(0));
        for (std::size_t k = 0; k < simplex.size(); ++k)
            for (std::size_t c = 0; c < p.size(); ++c) p[c] += simplex[k][c] * Dyadic(static_cast<long long>(w[k]));
        for (auto& c : p) c = Dyadic(c.mantissa(), c.exponent() + bits);
        return p;
    }

    /// m / 2^bits with m uniform in [lo, hi].
    Dyadic grid_value(long long lo, long long hi, unsigned bits) {
        const auto m = static_cast<long long>(uniform(0, static_cast<std::uint64_t>(hi - lo))) + lo;
        return Dyadic(Integer(m), bits);
    }

private:
    std::mt19937_64 rng_;
};

namespace detail {

struct CoverCount {
    std::size_t containing = 0;
    bool interior_hit = false;
};

inline CoverCount cover(const Point& p, const std::vector<SimplexLocator>& cells) {
    CoverCount out;
    for (const auto& cell : cells) {
        const auto m = cell.classify(p);
        if (m == Membership::interior || m == Membership::boundary) {
            ++out.containing;
            out.interior_hit = out.interior_hit || m == Membership::interior;
        }
    }
    return out;
}

}  // namespace detail

struct PartitionReport {
    std::size_t children = 0;
    std::size_t samples = 0;
    bool equal_volumes = false;
    /// Sum of child volumes minus parent volume (full-dimensional case).
    std::optional<Rational> volume_difference;
    /// n^2 v_child^2 - v_parent^2 (equal-volume case without full dimension).
    std::optional<Rational> squared_volume_difference;
    std::size_t uncovered = 0;
    std::size_t interior_double_cover = 0;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
};

/// Checks that `children` partition `parent`: exact volume balance and, for
/// `samples` seeded interior points, coverage without interior overlap.
inline PartitionReport partition_check(const std::vector<Point>& parent, const std::vector<std::vector<Point>>& children,
                                       std::size_t samples, std::uint64_t seed) {
    PartitionReport report;
    report.children = children.size();
    report.samples = samples;

    const RationalSq parent_v2 = volume_sq(parent);
    std::vector<RationalSq> child_v2;
    for (const auto& c : children) child_v2.push_back(volume_sq(c));
    report.equal_volumes = !children.empty() && std::all_of(child_v2.begin(), child_v2.end(), [&](const auto& v) { return v == child_v2[0]; });

    const int r = static_cast<int>(parent.size()) - 1;
    if (parent[0].size() == static_cast<std::size_t>(r)) {
        Rational sum = 0;
        for (const auto& c : children) sum += volume(c);
        report.volume_difference = sum - volume(parent);
        if (*report.volume_difference < 0) report.failures.push_back("volume deficit " + to_string(-*report.volume_difference));
        if (*report.volume_difference > 0) report.failures.push_back("volume surplus " + to_string(*report.volume_difference));
    } else if (report.equal_volumes) {
        const Rational n = static_cast<long long>(children.size());
        report.squared_volume_difference = n * n * child_v2[0] - parent_v2;
        if (*report.squared_volume_difference != 0) report.failures.push_back("child volumes do not sum to the parent volume");
    } else {
        report.failures.push_back("unequal child volumes in a lower-dimensional simplex cannot be summed exactly");
    }

    std::vector<SimplexLocator> cells;
    for (const auto& c : children) cells.emplace_back(c);
    DyadicSampler sampler(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        const auto p = sampler.interior_point(parent);
        const auto hit = detail::cover(p, cells);
        if (hit.containing == 0) ++report.uncovered;
        if (hit.containing >= 2 && hit.interior_hit) ++report.interior_double_cover;
    }
    if (report.uncovered) report.failures.push_back(std::to_string(report.uncovered) + " sample points not covered by any child");
    if (report.interior_double_cover)
        report.failures.push_back(std::to_string(report.interior_double_cover) + " sample points in the interior of overlapping children");
    return report;
}

struct TilingReport {
    Rational parallelepiped_volume;
    Rational conjugate_volume_sum;
    std::size_t conjugates = 0;
    std::size_t samples = 0;
    std::size_t uncovered = 0;
    std::size_t interior_double_cover = 0;
    std::size_t boundary_multi_cover = 0;

    bool passed() const { return parallelepiped_volume == conjugate_volume_sum && uncovered == 0 && interior_double_cover == 0; }
};

/// The r! conjugates of the simplex spanned by `base` and `edges` tile the
/// parallelepiped base + [0,1]^r . edges. Half the samples sit on a coarse
/// 1/16 grid so that ties alpha_a == alpha_b (shared facets) are exercised.
inline TilingReport cube_tiling_check(const Point& base, const std::vector<Point>& edges, std::size_t samples, std::uint64_t seed) {
    const std::size_t r = edges.size();
    if (base.size() != r) throw DimensionMismatch("cube_tiling_check needs a full-dimensional parallelepiped");
    TilingReport report;
    report.samples = samples;

    std::vector<Point> corner{base};
    for (const auto& e : edges) corner.push_back(add(base, e));
    report.parallelepiped_volume = volume(corner) * Rational(factorial(static_cast<int>(r)));

    std::vector<SimplexLocator> cells;
    for (const auto& pi : all_permutations(static_cast<int>(r))) {
        const auto verts = conjugate_vertices(base, edges, pi);
        report.conjugate_volume_sum += volume(verts);
        cells.emplace_back(verts);
    }
    report.conjugates = cells.size();

    DyadicSampler sampler(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        const bool coarse = s % 2 == 0;
        Point p = base;
        for (std::size_t nu = 0; nu < r; ++nu) {
            const Dyadic alpha = coarse ? sampler.grid_value(1, 15, 4) : sampler.grid_value(1, (1 << 20) - 1, 20);
            for (std::size_t c = 0; c < r; ++c) p[c] += alpha * edges[nu][c];
        }
        const auto hit = detail::cover(p, cells);
        if (hit.containing == 0) ++report.uncovered;
        if (hit.containing >= 2) (hit.interior_hit ? report.interior_double_cover : report.boundary_multi_cover) += 1;
    }
    return report;
}

struct AgreementReport {
    std::size_t conjugates = 0;
    std::size_t points = 0;
    std::size_t inside = 0;
    std::size_t disagreements = 0;

    bool passed() const { return disagreements == 0; }
};

/// Compares the hull description (point_in_simplex) with the alpha-chain
/// description on `samples` seeded points per conjugate, drawn from a box
/// around the parallelepiped on coarse and fine dyadic grids.
inline AgreementReport chain_agreement_check(const Point& base, const std::vector<Point>& edges, std::size_t samples,
                                             std::uint64_t seed) {
    AgreementReport report;
    DyadicSampler sampler(seed);
    const std::size_t r = edges.size();
    for (const auto& pi : all_permutations(static_cast<int>(r))) {
        ++report.conjugates;
        const auto verts = conjugate_vertices(base, edges, pi);
        const SimplexLocator hull(verts);
        const ChainLocator chain(base, edges, pi);
        for (std::size_t s = 0; s < samples; ++s) {
            const bool coarse = s % 2 == 0;
            Point p = base;
            for (std::size_t nu = 0; nu < r; ++nu) {
                const Dyadic alpha = coarse ? sampler.grid_value(-2, 10, 3) : sampler.grid_value(-(1 << 18), 5 << 18, 20);
                for (std::size_t c = 0; c < p.size(); ++c) p[c] += alpha * edges[nu][c];
            }
            const auto m = hull.classify(p);
            const bool in_hull = m == Membership::interior || m == Membership::boundary;
            ++report.points;
            report.inside += in_hull;
            if (in_hull != chain.contains(p)) ++report.disagreements;
        }
    }
    return report;
}

struct EquivalenceReport {
    int dimension = 0;
    std::vector<LabelSequence> from_counting;
    std::vector<LabelSequence> from_geometry;
    std::vector<LabelSequence> from_paths;
    std::vector<LabelSequence> from_cliques;
    bool generators_agree = false;
    bool adjacency_consistent = false;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
};

/// Set equality of the child label sequences from the counting formula, the
/// geometric subdivision of the standard simplex, lattice paths and cliques;
/// plus: two labels co-occur in some child iff labels_adjacent holds.
inline EquivalenceReport enumeration_equivalence(int r) {
    if (r < 1 || r > 6) throw std::invalid_argument("enumeration_equivalence: r must be in 1..6");
    EquivalenceReport report;
    report.dimension = r;
    for (const auto& key : enumerate_children(r)) report.from_counting.push_back(child_vertex_labels(key));

    std::vector<Point> standard;
    for (int i = 0; i <= r; ++i) {
        Point p(r, Dyadic(0));
        for (int k = 0; k < i; ++k) p[k] = 1;
        standard.push_back(std::move(p));
    }
    for (const auto& child : subdivide_simplex(standard).children) report.from_geometry.push_back(child.labels);
    report.from_paths = path_children(r);
    report.from_cliques = clique_children(r);

    for (auto* list : {&report.from_counting, &report.from_geometry, &report.from_paths, &report.from_cliques})
        std::sort(list->begin(), list->end());
    report.generators_agree = report.from_counting == report.from_geometry && report.from_counting == report.from_paths &&
                              report.from_counting == report.from_cliques;
    if (!report.generators_agree) report.failures.push_back("child generators disagree for r = " + std::to_string(r));
    const std::size_t expected = std::size_t{1} << r;
    if (report.from_counting.size() != expected) report.failures.push_back("expected 2^r children");

    std::set<std::pair<MidpointLabel, MidpointLabel>> co_occurring;
    for (const auto& child : report.from_counting)
        for (std::size_t a = 0; a < child.size(); ++a)
            for (std::size_t b = 0; b < child.size(); ++b)
                if (a != b) co_occurring.emplace(child[a], child[b]);
    report.adjacency_consistent = true;
    const auto labels = all_labels(r);
    for (const auto& a : labels)
        for (const auto& b : labels)
            if (labels_adjacent(a, b) != (co_occurring.count({a, b}) > 0)) report.adjacency_consistent = false;
    if (!report.adjacency_consistent) report.failures.push_back("label adjacency does not match child co-occurrence");
    return report;
}

}  // namespace freudenthal
