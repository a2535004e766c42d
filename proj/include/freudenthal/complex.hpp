#pragma once

// Pure-dimensional simplicial complexes with a global vertex order, and the
// polytope-level subdivision Z(R).
//
// Vertex order is load-bearing: every cell lists its ids ascending, and after
// subdivision the new table is ordered lexicographically by parent id pairs
// (old vertex a is carried as the pair (a, a)).

#include "arithmetic.hpp"
#include "detail/exact_lp.hpp"
#include "kernel.hpp"
#include "subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace freudenthal {

struct CellProvenance {
    std::size_t parent_cell = 0;
    ChildKey key;

    friend bool operator==(const CellProvenance&, const CellProvenance&) = default;
};

struct Complex {
    VertexTable vertices;
    std::vector<Simplex> cells;
    int dimension = 0;
    int generation = 0;
    /// Parent id pair of each vertex in the previous generation (empty at generation 0).
    std::vector<std::pair<std::size_t, std::size_t>> vertex_parents;
    /// Parent cell and child key of each cell (empty at generation 0).
    std::vector<CellProvenance> cell_provenance;

    std::size_t ambient_dimension() const { return vertices.empty() ? 0 : vertices.front().size(); }
    std::vector<Point> cell_points(std::size_t c) const { return gather(cells.at(c), vertices); }

    friend bool operator==(const Complex&, const Complex&) = default;
};

enum class ViolationKind {
    ambient_dimension,
    duplicate_point,
    wrong_arity,
    invalid_id,
    unsorted_cell,
    degenerate_cell,
    non_complex_intersection,
};

inline const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::ambient_dimension: return "ambient dimension mismatch";
        case ViolationKind::duplicate_point: return "duplicate point";
        case ViolationKind::wrong_arity: return "wrong cell arity";
        case ViolationKind::invalid_id: return "invalid vertex id";
        case ViolationKind::unsorted_cell: return "unsorted cell";
        case ViolationKind::degenerate_cell: return "degenerate cell";
        case ViolationKind::non_complex_intersection: return "non-complex intersection";
    }
    return "unknown";
}

struct Violation {
    ViolationKind kind;
    std::vector<std::size_t> items;  // offending cell ids (vertex ids for duplicate points)
    std::string message;
};

class ComplexError : public std::invalid_argument {
public:
    explicit ComplexError(Violation v) : std::invalid_argument(v.message), violation_(std::move(v)) {}
    const Violation& violation() const { return violation_; }

private:
    Violation violation_;
};

namespace detail {

struct PreparedCell {
    std::size_t index;
    std::vector<Point> points;
    Point lo;
    Point hi;
};

inline bool boxes_overlap(const PreparedCell& a, const PreparedCell& b) {
    for (std::size_t c = 0; c < a.lo.size(); ++c)
        if (a.hi[c] < b.lo[c] || b.hi[c] < a.lo[c]) return false;
    return true;
}

/// Sufficient test that conv(a) ∩ conv(b) ⊆ conv(shared), using only the
/// barycentric coordinates of b's vertices with respect to a. Repeatedly
/// picks a facet of the current face of `a` (opposite an unshared vertex)
/// that leaves every remaining unshared vertex of `b` on the far side or on
/// the facet, and restricts both sides to that facet. Succeeds once either
/// side is reduced to shared vertices.
inline bool facet_separates(const BarycentricFrame& a, const std::vector<std::size_t>& a_ids, const PreparedCell& b,
                            const std::vector<std::size_t>& b_ids, const std::set<std::size_t>& shared) {
    std::vector<std::vector<Integer>> coords;  // unshared vertices of b only
    for (std::size_t v = 0; v < b.points.size(); ++v) {
        if (shared.count(b_ids[v])) continue;
        auto c = a.locate(b.points[v]);
        if (!c) return false;
        coords.push_back(std::move(c->numerators));
    }
    std::vector<bool> a_alive(a_ids.size(), true);
    std::vector<bool> b_alive(coords.size(), true);
    for (;;) {
        if (std::none_of(b_alive.begin(), b_alive.end(), [](bool x) { return x; })) return true;
        bool a_unshared_left = false;
        bool progressed = false;
        for (std::size_t k = 0; k < a_ids.size() && !progressed; ++k) {
            if (!a_alive[k] || shared.count(a_ids[k])) continue;
            a_unshared_left = true;
            bool separates = true;
            for (std::size_t v = 0; v < coords.size() && separates; ++v)
                if (b_alive[v] && coords[v][k].sign() > 0) separates = false;
            if (!separates) continue;
            a_alive[k] = false;
            for (std::size_t v = 0; v < coords.size(); ++v)
                if (b_alive[v] && coords[v][k].sign() < 0) b_alive[v] = false;
            progressed = true;
        }
        if (!a_unshared_left) return true;
        if (!progressed) return false;
    }
}

inline double approx(const Dyadic& x) { return std::ldexp(x.mantissa().convert_to<double>(), -static_cast<int>(x.exponent())); }

/// Pairs (i < j) of cells whose bounding boxes may overlap, found by hashing
/// boxes into a uniform grid. Box coordinates are widened before bucketing,
/// so the exact overlap test afterwards sees every overlapping pair.
inline std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(const std::vector<PreparedCell>& cells) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (cells.size() < 2) return pairs;
    const std::size_t d = cells[0].lo.size();
    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    std::vector<std::vector<double>> clo(cells.size()), chi(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        for (std::size_t k = 0; k < d; ++k) {
            const double l = approx(cells[c].lo[k]);
            const double h = approx(cells[c].hi[k]);
            const double pad = 1e-9 * (1 + std::abs(l) + std::abs(h));
            clo[c].push_back(l - pad);
            chi[c].push_back(h + pad);
            lo[k] = std::min(lo[k], l - pad);
            hi[k] = std::max(hi[k], h + pad);
        }
    }
    // About as many buckets per axis as cells fit along it.
    const double per_axis = std::max(1.0, std::floor(std::pow(static_cast<double>(cells.size()), 1.0 / static_cast<double>(d))));
    const std::size_t n = static_cast<std::size_t>(std::min(per_axis, 256.0));
    const auto bucket = [&](std::size_t k, double x) {
        const double t = (x - lo[k]) / (hi[k] - lo[k]);
        return std::min(n - 1, static_cast<std::size_t>(std::max(0.0, t) * static_cast<double>(n)));
    };
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> grid;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        std::vector<std::size_t> from(d), to(d), at(d);
        for (std::size_t k = 0; k < d; ++k) {
            from[k] = bucket(k, clo[c][k]);
            to[k] = bucket(k, chi[c][k]);
        }
        at = from;
        for (;;) {
            grid[at].push_back(c);
            std::size_t k = 0;
            while (k < d && at[k] == to[k]) at[k] = from[k], ++k;
            if (k == d) break;
            ++at[k];
        }
    }
    for (const auto& [key, members] : grid)
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b) pairs.emplace_back(members[a], members[b]);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

/// Exact check that conv(a) ∩ conv(b) ⊆ conv(shared): maximize the weight on
/// a's unshared vertices over all common points.
inline bool intersection_is_common_face(const PreparedCell& a, const std::vector<std::size_t>& a_ids,
                                        const PreparedCell& b, const std::vector<std::size_t>& b_ids,
                                        const std::set<std::size_t>& shared) {
    const std::size_t na = a.points.size();
    const std::size_t nb = b.points.size();
    const std::size_t d = a.points[0].size();
    RationalMatrix rows(d + 2, std::vector<Rational>(na + nb));
    std::vector<Rational> rhs(d + 2);
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t v = 0; v < na; ++v) rows[c][v] = a.points[v][c].to_rational();
        for (std::size_t v = 0; v < nb; ++v) rows[c][na + v] = -b.points[v][c].to_rational();
    }
    for (std::size_t v = 0; v < na; ++v) rows[d][v] = 1;
    for (std::size_t v = 0; v < nb; ++v) rows[d + 1][na + v] = 1;
    rhs[d] = 1;
    rhs[d + 1] = 1;
    std::vector<Rational> cost(na + nb);
    for (std::size_t v = 0; v < na; ++v)
        if (!shared.count(a_ids[v])) cost[v] = 1;
    auto best = ExactSimplexLP(std::move(rows), std::move(rhs), std::move(cost)).solve();
    return !best || *best == 0;
}

}  // namespace detail

/// Every violation of the complex invariants; empty means valid.
inline std::vector<Violation> validate_complex(const Complex& R) {
    std::vector<Violation> out;
    const std::size_t d = R.ambient_dimension();
    for (std::size_t v = 0; v < R.vertices.size(); ++v)
        if (R.vertices[v].size() != d)
            out.push_back({ViolationKind::ambient_dimension, {v}, "vertex " + std::to_string(v) + " has wrong ambient dimension"});
    if (!out.empty()) return out;

    std::vector<std::size_t> order(R.vertices.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return R.vertices[a] < R.vertices[b] || (R.vertices[a] == R.vertices[b] && a < b); });
    for (std::size_t k = 1; k < order.size(); ++k)
        if (R.vertices[order[k]] == R.vertices[order[k - 1]])
            out.push_back({ViolationKind::duplicate_point, {order[k - 1], order[k]},
                           "duplicate point: vertices " + std::to_string(order[k - 1]) + " and " + std::to_string(order[k])});

    std::vector<detail::PreparedCell> good;
    std::vector<BarycentricFrame> frames;
    for (std::size_t c = 0; c < R.cells.size(); ++c) {
        const auto& ids = R.cells[c].vertex_ids;
        const std::string name = "cell " + std::to_string(c);
        if (static_cast<int>(ids.size()) != R.dimension + 1) {
            out.push_back({ViolationKind::wrong_arity, {c}, name + " does not have " + std::to_string(R.dimension + 1) + " vertices"});
            continue;
        }
        if (std::any_of(ids.begin(), ids.end(), [&](auto id) { return id >= R.vertices.size(); })) {
            out.push_back({ViolationKind::invalid_id, {c}, name + " references a missing vertex"});
            continue;
        }
        if (!std::is_sorted(ids.begin(), ids.end(), std::less_equal<>{}) || std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
            out.push_back({ViolationKind::unsorted_cell, {c}, "unsorted cell: " + name + " ids are not strictly increasing"});
            continue;
        }
        auto pts = R.cell_points(c);
        if (d < static_cast<std::size_t>(R.dimension) || gram_det(edge_vectors(std::span<const Point>(pts))) == 0) {
            out.push_back({ViolationKind::degenerate_cell, {c}, "degenerate cell: " + name});
            continue;
        }
        detail::PreparedCell p{c, pts, pts[0], pts[0]};
        for (const auto& q : pts)
            for (std::size_t k = 0; k < d; ++k) {
                p.lo[k] = std::min(p.lo[k], q[k]);
                p.hi[k] = std::max(p.hi[k], q[k]);
            }
        frames.emplace_back(std::span<const Point>(pts));
        good.push_back(std::move(p));
    }

    for (const auto& [i, j] : detail::candidate_pairs(good)) {
        const auto& A = good[i];
        const auto& B = good[j];
        if (!detail::boxes_overlap(A, B)) continue;
        const auto& a_ids = R.cells[A.index].vertex_ids;
        const auto& b_ids = R.cells[B.index].vertex_ids;
        std::set<std::size_t> shared;
        std::set_intersection(a_ids.begin(), a_ids.end(), b_ids.begin(), b_ids.end(), std::inserter(shared, shared.end()));
        if (detail::facet_separates(frames[i], a_ids, B, b_ids, shared) || detail::facet_separates(frames[j], b_ids, A, a_ids, shared))
            continue;
        if (detail::intersection_is_common_face(A, a_ids, B, b_ids, shared)) continue;
        const auto lo = std::min(A.index, B.index);
        const auto hi = std::max(A.index, B.index);
        out.push_back({ViolationKind::non_complex_intersection, {lo, hi},
                       "non-complex intersection between cells " + std::to_string(lo) + " and " + std::to_string(hi)});
    }
    return out;
}

/// Canonical complex: each cell's ids sorted ascending, then validated.
/// Throws ComplexError carrying the first violation.
inline Complex build_complex(VertexTable points, std::vector<std::vector<std::size_t>> cells) {
    if (cells.empty()) throw ComplexError({ViolationKind::wrong_arity, {}, "complex has no cells"});
    Complex R;
    R.vertices = std::move(points);
    R.dimension = static_cast<int>(cells.front().size()) - 1;
    if (R.dimension < 1) throw ComplexError({ViolationKind::wrong_arity, {0}, "cells must have at least two vertices"});
    for (auto& c : cells) {
        std::sort(c.begin(), c.end());
        R.cells.push_back({std::move(c)});
    }
    auto violations = validate_complex(R);
    if (!violations.empty()) throw ComplexError(std::move(violations.front()));
    return R;
}

/// Z(R): every cell replaced by its 2^r children. Midpoints are keyed by the
/// parent id pair, so a midpoint shared by several cells is created once.
inline Complex subdivide_complex(const Complex& R) {
    std::set<std::pair<std::size_t, std::size_t>> keys;
    for (const auto& cell : R.cells) {
        const auto& ids = cell.vertex_ids;
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = i; j < ids.size(); ++j) keys.emplace(ids[i], ids[j]);
    }

    Complex out;
    out.dimension = R.dimension;
    out.generation = R.generation + 1;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> id_of;
    for (const auto& k : keys) {
        id_of.emplace(k, out.vertices.size());
        out.vertex_parents.push_back(k);
        out.vertices.push_back(k.first == k.second ? R.vertices[k.first] : midpoint(R.vertices[k.first], R.vertices[k.second]));
    }

    for (std::size_t c = 0; c < R.cells.size(); ++c) {
        const auto& ids = R.cells[c].vertex_ids;
        const auto local = subdivide_simplex(R.cells[c], R.vertices);
        for (const auto& child : local.children) {
            Simplex s;
            for (const auto& l : child.labels) s.vertex_ids.push_back(id_of.at({ids[l.i], ids[l.j]}));
            out.cells.push_back(std::move(s));
            out.cell_provenance.push_back({c, child.key});
        }
    }
    return out;
}

inline Complex iterate_subdivision(const Complex& R, int k) {
    if (k < 0) throw std::invalid_argument("iterate_subdivision: k must be >= 0");
    Complex cur = R;
    for (int step = 0; step < k; ++step) cur = subdivide_complex(cur);
    return cur;
}

/// Kuhn simplex e_i = (1, ..., 1, 0, ..., 0) with i leading ones, as a
/// one-cell complex.
inline Complex standard_simplex(int r) {
    if (r < 1) throw std::invalid_argument("standard_simplex: r must be >= 1");
    VertexTable pts;
    for (int i = 0; i <= r; ++i) {
        Point p(r, Dyadic(0));
        for (int k = 0; k < i; ++k) p[k] = 1;
        pts.push_back(std::move(p));
    }
    std::vector<std::size_t> ids(r + 1);
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    return build_complex(std::move(pts), {ids});
}

}  // namespace freudenthal
