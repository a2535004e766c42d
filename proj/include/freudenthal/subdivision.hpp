#pragma once

// Z(T): the 2^r half-scale children of an ordered simplex.
//
// Three generators produce the same children and are cross-checked in tests:
//   subdivide_simplex  - geometric, from halved sub-parallelepipeds
//   path_children      - monotone lattice paths of midpoint labels
//   clique_children    - maximal cliques of the label adjacency relation
// barycentric_subdivide is the classical baseline whose shape degrades.

#include "arithmetic.hpp"
#include "kernel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <vector>

namespace freudenthal {

/// Ordered vertex ids into a vertex table.
struct Simplex {
    std::vector<std::size_t> vertex_ids;

    int dimension() const { return static_cast<int>(vertex_ids.size()) - 1; }

    friend bool operator==(const Simplex&, const Simplex&) = default;
    friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

using VertexTable = std::vector<Point>;

inline std::vector<Point> gather(const Simplex& s, const VertexTable& table) {
    std::vector<Point> out;
    out.reserve(s.vertex_ids.size());
    for (auto id : s.vertex_ids) out.push_back(table.at(id));
    return out;
}

struct SubdividedChild {
    ChildKey key;
    LabelSequence labels;  // ascending i + j
};

struct SubdivisionResult {
    std::map<MidpointLabel, Point> new_vertices;
    std::vector<SubdividedChild> children;

    std::vector<Point> child_points(std::size_t c) const {
        std::vector<Point> out;
        for (const auto& l : children.at(c).labels) out.push_back(new_vertices.at(l));
        return out;
    }
};

/// Geometric Z(T). Each child is the conjugate (T_sigma)^pi built from the
/// halved sub-parallelepiped with corner x_0 + 1/2 sum s_nu x_nu; its vertices
/// are then identified with midpoint labels by exact coordinate lookup.
inline SubdivisionResult subdivide_simplex(std::span<const Point> vertices) {
    if (vertices.size() < 2) throw std::invalid_argument("subdivide_simplex: need r >= 1");
    const int r = static_cast<int>(vertices.size()) - 1;
    const auto offsets = edge_vectors(vertices);
    if (vertices[0].size() < static_cast<std::size_t>(r) || gram_det(offsets) == 0)
        throw DegenerateSimplex("subdivide_simplex: degenerate input simplex");

    SubdivisionResult result;
    std::map<Point, MidpointLabel> by_point;
    for (int i = 0; i <= r; ++i) {
        for (int j = i; j <= r; ++j) {
            auto p = (i == j) ? vertices[i] : midpoint(vertices[i], vertices[j]);
            by_point.emplace(p, MidpointLabel(i, j));
            result.new_vertices.emplace(MidpointLabel(i, j), std::move(p));
        }
    }

    // x_nu = e_nu - e_{nu-1}
    std::vector<Point> steps(r);
    for (int nu = 1; nu <= r; ++nu) steps[nu - 1] = sub(vertices[nu], vertices[nu - 1]);

    for (auto& key : enumerate_children(r)) {
        Point corner = vertices[0];
        for (int nu = 1; nu <= r; ++nu)
            if (key.sigma.bit(nu) == 1) corner = add(corner, halve(steps[nu - 1]));

        SubdividedChild child{key, {}};
        Point at = corner;
        for (int k = 0; k <= r; ++k) {
            if (k > 0) at = add(at, halve(steps[key.pi.at(k) - 1]));
            const auto hit = by_point.find(at);
            if (hit == by_point.end()) throw std::logic_error("subdivide_simplex: child vertex is not an edge midpoint");
            child.labels.push_back(hit->second);
        }
        result.children.push_back(std::move(child));
    }
    return result;
}

inline SubdivisionResult subdivide_simplex(const std::vector<Point>& vertices) {
    return subdivide_simplex(std::span<const Point>(vertices));
}

inline SubdivisionResult subdivide_simplex(const Simplex& s, const VertexTable& table) {
    return subdivide_simplex(gather(s, table));
}

/// Two distinct labels are joined by an edge of Z(T) iff their index pairs
/// interleave as a chain: a.i <= b.i <= a.j <= b.j, or the same with a, b swapped.
inline bool labels_adjacent(const MidpointLabel& a, const MidpointLabel& b) {
    if (a == b) return false;
    const auto chain = [](const MidpointLabel& x, const MidpointLabel& y) { return x.i <= y.i && y.i <= x.j && x.j <= y.j; };
    return chain(a, b) || chain(b, a);
}

/// For u = 0..r, every monotone lattice path from (0, u) to (u, r).
inline std::vector<LabelSequence> path_children(int r) {
    if (r < 1) throw std::invalid_argument("path_children: r must be >= 1");
    std::vector<LabelSequence> paths;
    for (int u = 0; u <= r; ++u) {
        LabelSequence path{MidpointLabel(0, u)};
        std::function<void(int, int)> walk = [&](int i, int j) {
            if (i == u && j == r) {
                paths.push_back(path);
                return;
            }
            if (i < u) {
                path.emplace_back(i + 1, j);
                walk(i + 1, j);
                path.pop_back();
            }
            if (j < r) {
                path.emplace_back(i, j + 1);
                walk(i, j + 1);
                path.pop_back();
            }
        };
        walk(0, u);
    }
    return paths;
}

/// All midpoint labels (i, j), 0 <= i <= j <= r, lexicographically.
inline std::vector<MidpointLabel> all_labels(int r) {
    std::vector<MidpointLabel> out;
    for (int i = 0; i <= r; ++i)
        for (int j = i; j <= r; ++j) out.emplace_back(i, j);
    return out;
}

/// Maximal cliques of labels_adjacent, each sorted by i + j; the list is
/// sorted lexicographically.
inline std::vector<LabelSequence> clique_children(int r) {
    if (r < 1) throw std::invalid_argument("clique_children: r must be >= 1");
    const auto labels = all_labels(r);
    const std::size_t n = labels.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) adj[a][b] = labels_adjacent(labels[a], labels[b]);

    // Bron-Kerbosch with pivoting.
    std::vector<LabelSequence> cliques;
    std::vector<std::size_t> current;
    std::function<void(std::vector<std::size_t>, std::vector<std::size_t>)> expand = [&](std::vector<std::size_t> cand,
                                                                                          std::vector<std::size_t> excl) {
        if (cand.empty() && excl.empty()) {
            LabelSequence c;
            for (auto k : current) c.push_back(labels[k]);
            std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.weight() < y.weight(); });
            cliques.push_back(std::move(c));
            return;
        }
        std::size_t pivot = cand.empty() ? excl.front() : cand.front();
        std::size_t best = 0;
        for (auto v : cand) {
            std::size_t deg = 0;
            for (auto w : cand) deg += adj[v][w];
            if (deg >= best) {
                best = deg;
                pivot = v;
            }
        }
        std::vector<std::size_t> todo;
        for (auto v : cand)
            if (!adj[pivot][v]) todo.push_back(v);
        for (auto v : todo) {
            std::vector<std::size_t> nc;
            std::vector<std::size_t> ne;
            for (auto w : cand)
                if (adj[v][w]) nc.push_back(w);
            for (auto w : excl)
                if (adj[v][w]) ne.push_back(w);
            current.push_back(v);
            expand(std::move(nc), std::move(ne));
            current.pop_back();
            cand.erase(std::find(cand.begin(), cand.end(), v));
            excl.push_back(v);
        }
    };
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    expand(all, {});
    std::sort(cliques.begin(), cliques.end());
    return cliques;
}

/// Children as vertex lists in rational coordinates.
struct BarycentricResult {
    std::vector<std::vector<RationalPoint>> children;
};

/// Classical barycentric subdivision: one child per vertex ordering
/// (v_{t_0}, ..., v_{t_r}), spanned by the barycenters of the nested faces
/// {v_{t_0}}, {v_{t_0}, v_{t_1}}, ..., and ordered by that flag.
template <ExactScalar T>
BarycentricResult barycentric_subdivide(std::span<const BasicPoint<T>> vertices) {
    if (vertices.size() < 2) throw std::invalid_argument("barycentric_subdivide: need r >= 1");
    const int r = static_cast<int>(vertices.size()) - 1;
    if (vertices[0].size() < static_cast<std::size_t>(r) || gram_det(edge_vectors(vertices)) == 0)
        throw DegenerateSimplex("barycentric_subdivide: degenerate input simplex");

    std::vector<RationalPoint> rational;
    for (const auto& v : vertices) rational.push_back(to_rational(v));
    const std::size_t d = rational[0].size();

    BarycentricResult result;
    std::vector<int> order(r + 1);
    std::iota(order.begin(), order.end(), 0);
    do {
        std::vector<RationalPoint> child;
        RationalPoint sum(d, Rational(0));
        for (int k = 0; k <= r; ++k) {
            for (std::size_t c = 0; c < d; ++c) sum[c] += rational[order[k]][c];
            RationalPoint bary(d);
            for (std::size_t c = 0; c < d; ++c) bary[c] = sum[c] / (k + 1);
            child.push_back(std::move(bary));
        }
        result.children.push_back(std::move(child));
    } while (std::next_permutation(order.begin(), order.end()));
    return result;
}

template <ExactScalar T>
BarycentricResult barycentric_subdivide(const std::vector<BasicPoint<T>>& vertices) {
    return barycentric_subdivide(std::span<const BasicPoint<T>>(vertices));
}

inline BarycentricResult barycentric_subdivide(const Simplex& s, const VertexTable& table) {
    return barycentric_subdivide(gather(s, table));
}

}  // namespace freudenthal
