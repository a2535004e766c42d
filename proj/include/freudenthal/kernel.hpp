#pragma once

// Combinatorics of conjugate simplices and their halved children.
//
// Indexing is 1-based for edge vectors, permutation entries and sign bits
// (x_1..x_r, p_1..p_r, s_1..s_r) and 0-based for vertices (e_0..e_r).

#include "arithmetic.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace freudenthal {

/// A bijection p_1..p_r on {1..r}.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> seq) : seq_(std::move(seq)) {
        std::vector<bool> seen(seq_.size() + 1, false);
        for (int v : seq_) {
            if (v < 1 || v > static_cast<int>(seq_.size()) || seen[v])
                throw std::invalid_argument("not a permutation of 1.." + std::to_string(seq_.size()));
            seen[v] = true;
        }
    }

    static Permutation identity(int r) {
        std::vector<int> seq(r);
        std::iota(seq.begin(), seq.end(), 1);
        return Permutation(std::move(seq));
    }

    int size() const { return static_cast<int>(seq_.size()); }
    /// p_nu, nu in 1..r.
    int at(int nu) const { return seq_.at(nu - 1); }
    const std::vector<int>& values() const { return seq_; }
    bool is_identity() const {
        for (int k = 0; k < size(); ++k)
            if (seq_[k] != k + 1) return false;
        return true;
    }

    std::string to_string() const {
        std::string out = "(";
        for (std::size_t k = 0; k < seq_.size(); ++k) out += (k ? "," : "") + std::to_string(seq_[k]);
        return out + ")";
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> seq_;
};

/// All r! permutations in lexicographic order.
inline std::vector<Permutation> all_permutations(int r) {
    std::vector<int> seq(r);
    std::iota(seq.begin(), seq.end(), 1);
    std::vector<Permutation> out;
    do {
        out.emplace_back(seq);
    } while (std::next_permutation(seq.begin(), seq.end()));
    return out;
}

/// Selects one of the 2^r half-scale sub-parallelepipeds.
class SignVector {
public:
    SignVector() = default;
    explicit SignVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
        for (auto b : bits_)
            if (b > 1) throw std::invalid_argument("sign bits must be 0 or 1");
    }

    /// Bits of `value` with s_1 as the most significant.
    static SignVector from_binary(std::uint64_t value, int r) {
        std::vector<std::uint8_t> bits(r);
        for (int a = 0; a < r; ++a) bits[a] = static_cast<std::uint8_t>((value >> (r - 1 - a)) & 1u);
        return SignVector(std::move(bits));
    }

    int size() const { return static_cast<int>(bits_.size()); }
    /// s_a, a in 1..r.
    int bit(int a) const { return bits_.at(a - 1); }
    const std::vector<std::uint8_t>& bits() const { return bits_; }
    int ones() const { return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1)); }

    std::uint64_t as_binary() const {
        std::uint64_t v = 0;
        for (auto b : bits_) v = (v << 1) | b;
        return v;
    }

    std::string to_string() const {
        std::string out = "(";
        for (std::size_t k = 0; k < bits_.size(); ++k) out += (k ? "," : "") + std::to_string(bits_[k]);
        return out + ")";
    }

    friend bool operator==(const SignVector&, const SignVector&) = default;
    friend std::strong_ordering operator<=>(const SignVector& a, const SignVector& b) {
        if (auto c = a.size() <=> b.size(); c != 0) return c;
        return a.as_binary() <=> b.as_binary();
    }

private:
    std::vector<std::uint8_t> bits_;
};

/// Stable partition of pi: entries a with s_a = 1 first, then those with s_a = 0.
inline Permutation sigma_refine(const Permutation& pi, const SignVector& sigma) {
    if (pi.size() != sigma.size()) throw std::invalid_argument("sigma_refine: length mismatch");
    std::vector<int> out;
    out.reserve(pi.size());
    for (int v : pi.values())
        if (sigma.bit(v) == 1) out.push_back(v);
    for (int v : pi.values())
        if (sigma.bit(v) == 0) out.push_back(v);
    return Permutation(std::move(out));
}

/// Identifies the child (T_sigma)^pi of Z(T).
struct ChildKey {
    SignVector sigma;
    Permutation pi;

    int dimension() const { return pi.size(); }
    int u() const { return sigma.ones(); }
    bool valid() const { return sigma.size() == pi.size() && sigma_refine(pi, sigma).is_identity(); }

    friend bool operator==(const ChildKey&, const ChildKey&) = default;
    friend auto operator<=>(const ChildKey&, const ChildKey&) = default;
};

/// Names the point (e_i + e_j) / 2; (i, i) is e_i itself.
struct MidpointLabel {
    int i = 0;
    int j = 0;

    MidpointLabel() = default;
    MidpointLabel(int i_, int j_) : i(i_), j(j_) {
        if (i < 0 || i > j) throw std::invalid_argument("midpoint label needs 0 <= i <= j");
    }
    static MidpointLabel of(int a, int b) { return a <= b ? MidpointLabel(a, b) : MidpointLabel(b, a); }

    int weight() const { return i + j; }
    std::string to_string() const { return std::to_string(i) + std::to_string(j); }

    friend bool operator==(const MidpointLabel&, const MidpointLabel&) = default;
    friend auto operator<=>(const MidpointLabel&, const MidpointLabel&) = default;
};

using LabelSequence = std::vector<MidpointLabel>;

/// Vertices of the conjugate T^pi: e_i = base + sum_{nu<=i} x_{p_nu}.
template <ExactScalar T>
std::vector<BasicPoint<T>> conjugate_vertices(const BasicPoint<T>& base, std::span<const BasicPoint<T>> edges,
                                              const Permutation& pi) {
    if (static_cast<int>(edges.size()) != pi.size())
        throw std::invalid_argument("conjugate_vertices: permutation length differs from edge count");
    for (const auto& e : edges) detail::require_same_dim(base.size(), e.size());
    if (gram_det(edges) == 0) throw DegenerateSimplex("conjugate_vertices: edges are linearly dependent");

    std::vector<BasicPoint<T>> out;
    out.reserve(edges.size() + 1);
    out.push_back(base);
    for (int nu = 1; nu <= pi.size(); ++nu) out.push_back(add(out.back(), edges[pi.at(nu) - 1]));
    return out;
}

template <ExactScalar T>
std::vector<BasicPoint<T>> conjugate_vertices(const BasicPoint<T>& base, const std::vector<BasicPoint<T>>& edges,
                                              const Permutation& pi) {
    return conjugate_vertices(base, std::span<const BasicPoint<T>>(edges), pi);
}

/// Step pattern (s_{p_1}, ..., s_{p_r}); a 1 advances the first label index.
inline std::vector<std::uint8_t> step_pattern(const ChildKey& key) {
    std::vector<std::uint8_t> steps(key.dimension());
    for (int nu = 1; nu <= key.dimension(); ++nu) steps[nu - 1] = static_cast<std::uint8_t>(key.sigma.bit(key.pi.at(nu)));
    return steps;
}

/// Label of the k-th vertex is (k', k'' + u), where k' and k'' count the
/// first k entries of pi with sign 1 and sign 0 respectively.
inline LabelSequence child_vertex_labels(const ChildKey& key) {
    if (!key.valid()) throw std::invalid_argument("child_vertex_labels: key is not a child of the identity frame");
    const int u = key.u();
    LabelSequence labels;
    labels.reserve(key.dimension() + 1);
    int ones = 0;
    int zeros = 0;
    labels.emplace_back(0, u);
    for (int nu = 1; nu <= key.dimension(); ++nu) {
        (key.sigma.bit(key.pi.at(nu)) == 1 ? ones : zeros) += 1;
        labels.emplace_back(ones, zeros + u);
    }
    return labels;
}

/// Every (sigma, pi) whose refinement is the identity, ordered by sigma as
/// a binary number (s_1 most significant), then pi lexicographically.
inline std::vector<ChildKey> enumerate_children(int r) {
    if (r < 1) throw std::invalid_argument("enumerate_children: r must be >= 1");
    const auto perms = all_permutations(r);
    std::vector<ChildKey> keys;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << r); ++s) {
        const auto sigma = SignVector::from_binary(s, r);
        for (const auto& pi : perms)
            if (sigma_refine(pi, sigma).is_identity()) keys.push_back({sigma, pi});
    }
    return keys;
}

}  // namespace freudenthal
