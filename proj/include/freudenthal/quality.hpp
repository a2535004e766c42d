#pragma once

// Flatness c^r / v and similarity classes, kept squared so every value is
// an exact rational.

#include "arithmetic.hpp"
#include "complex.hpp"
#include "subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <vector>

namespace freudenthal {

/// Squared edge lengths divided by the squared diameter, ascending.
using Signature = std::vector<Rational>;

template <ExactScalar T>
std::vector<RationalSq> squared_edge_lengths(std::span<const BasicPoint<T>> s) {
    std::vector<RationalSq> out;
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = a + 1; b < s.size(); ++b) out.push_back(squared_distance(s[a], s[b]));
    return out;
}

template <ExactScalar T>
RationalSq diameter_sq(std::span<const BasicPoint<T>> s) {
    RationalSq best = 0;
    for (auto& e : squared_edge_lengths(s)) best = std::max(best, e);
    return best;
}

inline Integer factorial(int n) {
    Integer f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

/// det(GᵀG) / (r!)^2 over the edge vectors from vertex 0.
template <ExactScalar T>
RationalSq volume_sq(std::span<const BasicPoint<T>> s) {
    if (s.size() < 2) return 0;
    const int r = static_cast<int>(s.size()) - 1;
    const Integer f = factorial(r);
    return gram_det(edge_vectors(s)) / Rational(f * f);
}

/// diameter^(2r) / volume^2.
template <ExactScalar T>
RationalSq flatness_sq(std::span<const BasicPoint<T>> s) {
    const RationalSq v2 = volume_sq(s);
    if (v2 == 0) throw DegenerateSimplex("flatness_sq: zero volume");
    const int r = static_cast<int>(s.size()) - 1;
    const RationalSq c2 = diameter_sq(s);
    RationalSq num = 1;
    for (int k = 0; k < r; ++k) num *= c2;
    return num / v2;
}

template <ExactScalar T>
Signature similarity_signature(std::span<const BasicPoint<T>> s) {
    if (volume_sq(s) == 0) throw DegenerateSimplex("similarity_signature: zero volume");
    auto lengths = squared_edge_lengths(s);
    const RationalSq c2 = *std::max_element(lengths.begin(), lengths.end());
    for (auto& l : lengths) l /= c2;
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

// Overloads for vectors and table-indexed simplices.
template <ExactScalar T>
RationalSq diameter_sq(const std::vector<BasicPoint<T>>& s) { return diameter_sq(std::span<const BasicPoint<T>>(s)); }
template <ExactScalar T>
RationalSq volume_sq(const std::vector<BasicPoint<T>>& s) { return volume_sq(std::span<const BasicPoint<T>>(s)); }
template <ExactScalar T>
RationalSq flatness_sq(const std::vector<BasicPoint<T>>& s) { return flatness_sq(std::span<const BasicPoint<T>>(s)); }
template <ExactScalar T>
Signature similarity_signature(const std::vector<BasicPoint<T>>& s) {
    return similarity_signature(std::span<const BasicPoint<T>>(s));
}

inline RationalSq diameter_sq(const Simplex& s, const VertexTable& t) { return diameter_sq(gather(s, t)); }
inline RationalSq volume_sq(const Simplex& s, const VertexTable& t) { return volume_sq(gather(s, t)); }
inline RationalSq flatness_sq(const Simplex& s, const VertexTable& t) { return flatness_sq(gather(s, t)); }
inline Signature similarity_signature(const Simplex& s, const VertexTable& t) { return similarity_signature(gather(s, t)); }

struct QualityRecord {
    RationalSq diameter_sq;
    RationalSq volume_sq;
    RationalSq flatness_sq;
    Signature signature;
};

template <ExactScalar T>
QualityRecord quality_record(std::span<const BasicPoint<T>> s) {
    QualityRecord q;
    q.diameter_sq = diameter_sq(s);
    q.volume_sq = volume_sq(s);
    q.flatness_sq = flatness_sq(s);
    q.signature = similarity_signature(s);
    return q;
}

template <ExactScalar T>
QualityRecord quality_record(const std::vector<BasicPoint<T>>& s) {
    return quality_record(std::span<const BasicPoint<T>>(s));
}

/// Per-cell records plus the aggregate over a collection of simplices.
struct QualityReport {
    std::vector<QualityRecord> records;
    std::map<Signature, std::size_t> census;
    RationalSq max_flatness_sq = 0;

    void add(QualityRecord q) {
        max_flatness_sq = std::max(max_flatness_sq, q.flatness_sq);
        ++census[q.signature];
        records.push_back(std::move(q));
    }
};

template <ExactScalar T>
QualityReport quality_report(const std::vector<std::vector<BasicPoint<T>>>& cells) {
    QualityReport report;
    for (const auto& c : cells) report.add(quality_record(c));
    return report;
}

inline QualityReport quality_report(const Complex& R) {
    QualityReport report;
    for (std::size_t c = 0; c < R.cells.size(); ++c) report.add(quality_record(R.cell_points(c)));
    return report;
}

/// Unsigned volume of a full-dimensional simplex (d == r), exact.
template <ExactScalar T>
Rational volume(std::span<const BasicPoint<T>> s) {
    const int r = static_cast<int>(s.size()) - 1;
    const auto edges = edge_vectors(s);
    if (r < 1 || edges[0].size() != static_cast<std::size_t>(r))
        throw DimensionMismatch("volume needs a full-dimensional simplex");
    std::vector<Rational> flat;
    for (const auto& e : edges)
        for (const auto& c : e) flat.push_back(to_rational(c));
    const Integer scale = lcm_of_denominators(flat);
    detail::IntegerMatrix m(r, std::vector<Integer>(r));
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) m[i][k] = numerator(flat[i * r + k]) * (scale / denominator(flat[i * r + k]));
    Integer det = detail::bareiss_det(std::move(m));
    Integer den = factorial(r);
    for (int k = 0; k < r; ++k) den *= scale;
    return Rational(abs(det), den);
}

template <ExactScalar T>
Rational volume(const std::vector<BasicPoint<T>>& s) { return volume(std::span<const BasicPoint<T>>(s)); }

/// Sum of exact cell volumes of a full-dimensional complex.
inline Rational total_volume(const Complex& R) {
    Rational sum = 0;
    for (std::size_t c = 0; c < R.cells.size(); ++c) sum += volume(R.cell_points(c));
    return sum;
}

/// Human-readable c^r / v, i.e. the square root of flatness_sq.
inline double flatness_decimal(const RationalSq& q2) { return std::sqrt(to_double(q2)); }

}  // namespace freudenthal
