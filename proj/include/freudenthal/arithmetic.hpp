#pragma once

// Exact scalars for subdivision geometry.
//
// Every coordinate produced by halving is a dyadic rational m / 2^e, so the
// point type stores Dyadic values. Gram determinants, barycentric solves and
// quality ratios leave the dyadic ring and are returned as general rationals.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace freudenthal {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Squared lengths, squared volumes and squared flatness values.
using RationalSq = Rational;

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DegenerateSimplex : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline Integer pow2(unsigned e) { return Integer(1) << e; }

/// m / 2^e in canonical form: e == 0 or m odd.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long long value) : mantissa_(value) {}  // NOLINT(implicit)
    Dyadic(Integer mantissa, unsigned exponent) : mantissa_(std::move(mantissa)), exponent_(exponent) {
        normalize();
    }

    const Integer& mantissa() const { return mantissa_; }
    unsigned exponent() const { return exponent_; }

    bool is_zero() const { return mantissa_.is_zero(); }
    int sign() const { return mantissa_.sign(); }

    Dyadic halved() const { return Dyadic(mantissa_, exponent_ + 1); }

    Rational to_rational() const { return Rational(mantissa_, pow2(exponent_)); }

    /// Mantissa rescaled to exponent `e` (requires e >= exponent()).
    Integer scaled_to(unsigned e) const { return mantissa_ * pow2(e - exponent_); }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        const unsigned e = std::max(a.exponent_, b.exponent_);
        return Dyadic(a.scaled_to(e) + b.scaled_to(e), e);
    }
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
        const unsigned e = std::max(a.exponent_, b.exponent_);
        return Dyadic(a.scaled_to(e) - b.scaled_to(e), e);
    }
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
    }
    Dyadic operator-() const { return Dyadic(-mantissa_, exponent_); }

    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
    Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

    // Canonical form makes structural equality value equality.
    friend bool operator==(const Dyadic&, const Dyadic&) = default;

    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
        const unsigned e = std::max(a.exponent_, b.exponent_);
        const Integer lhs = a.scaled_to(e);
        const Integer rhs = b.scaled_to(e);
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// "m" when the value is an integer, otherwise "m/2^e".
    std::string to_string() const {
        std::string out = mantissa_.str();
        if (exponent_ > 0) out += "/2^" + std::to_string(exponent_);
        return out;
    }

    /// Exact, always-terminating decimal expansion (m * 5^e / 10^e).
    std::string to_decimal() const {
        if (exponent_ == 0) return mantissa_.str();
        Integer digits = abs(mantissa_);
        for (unsigned k = 0; k < exponent_; ++k) digits *= 5;
        std::string s = digits.str();
        if (s.size() <= exponent_) s.insert(0, exponent_ - s.size() + 1, '0');
        s.insert(s.size() - exponent_, ".");
        return (mantissa_.sign() < 0 ? "-" : "") + s;
    }

    /// Inverse of to_string(); also accepts "m/q" with q a power of two.
    static Dyadic parse(std::string_view text) {
        const auto slash = text.find('/');
        if (slash == std::string_view::npos) return Dyadic(parse_integer(text), 0);
        const Integer m = parse_integer(text.substr(0, slash));
        std::string_view den = text.substr(slash + 1);
        if (den.starts_with("2^")) {
            const Integer e = parse_integer(den.substr(2));
            if (e.sign() < 0 || e > 1u << 20) throw std::invalid_argument("bad dyadic exponent: " + std::string(text));
            return Dyadic(m, e.convert_to<unsigned>());
        }
        const Integer q = parse_integer(den);
        if (q.sign() <= 0 || (q & (q - 1)) != 0)
            throw std::invalid_argument("denominator is not a power of two: " + std::string(text));
        return Dyadic(m, static_cast<unsigned>(msb(q)));
    }

private:
    static Integer parse_integer(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("empty integer literal");
        std::size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (k == s.size()) throw std::invalid_argument("bad integer literal: " + std::string(s));
        for (std::size_t i = k; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer literal: " + std::string(s));
        // strip leading zeros, which the Integer parser reads as an octal prefix
        const auto digits = s.substr(k);
        Integer v(std::string(digits.substr(std::min(digits.find_first_not_of('0'), digits.size() - 1))));
        return s[0] == '-' ? Integer(-v) : v;
    }

    void normalize() {
        if (mantissa_.is_zero()) {
            exponent_ = 0;
            return;
        }
        const unsigned tz = static_cast<unsigned>(lsb(abs(mantissa_)));
        const unsigned shift = std::min(tz, exponent_);
        if (shift > 0) {
            mantissa_ /= pow2(shift);
            exponent_ -= shift;
        }
    }

    Integer mantissa_{0};
    unsigned exponent_ = 0;
};

inline Rational to_rational(const Dyadic& d) { return d.to_rational(); }
inline Rational to_rational(const Rational& r) { return r; }

inline Dyadic halve(const Dyadic& d) { return d.halved(); }
inline Rational halve(const Rational& r) { return r / 2; }

template <class T>
concept ExactScalar = std::same_as<T, Dyadic> || std::same_as<T, Rational>;

template <class T>
using BasicPoint = std::vector<T>;

using Point = BasicPoint<Dyadic>;
using RationalPoint = BasicPoint<Rational>;

namespace detail {
inline void require_same_dim(std::size_t a, std::size_t b) {
    if (a != b) throw DimensionMismatch("point dimensions differ: " + std::to_string(a) + " vs " + std::to_string(b));
}
}  // namespace detail

template <ExactScalar T>
BasicPoint<T> add(const BasicPoint<T>& a, const BasicPoint<T>& b) {
    detail::require_same_dim(a.size(), b.size());
    BasicPoint<T> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
    return out;
}

template <ExactScalar T>
BasicPoint<T> sub(const BasicPoint<T>& a, const BasicPoint<T>& b) {
    detail::require_same_dim(a.size(), b.size());
    BasicPoint<T> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
    return out;
}

template <ExactScalar T>
BasicPoint<T> halve(const BasicPoint<T>& a) {
    BasicPoint<T> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = halve(a[k]);
    return out;
}

template <ExactScalar T>
BasicPoint<T> midpoint(const BasicPoint<T>& a, const BasicPoint<T>& b) {
    return halve(add(a, b));
}

template <ExactScalar T>
RationalPoint to_rational(const BasicPoint<T>& p) {
    RationalPoint out;
    out.reserve(p.size());
    for (const auto& c : p) out.push_back(to_rational(c));
    return out;
}

template <ExactScalar T>
Rational dot(const BasicPoint<T>& a, const BasicPoint<T>& b) {
    detail::require_same_dim(a.size(), b.size());
    T acc{};
    for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
    return to_rational(acc);
}

template <ExactScalar T>
Rational squared_distance(const BasicPoint<T>& a, const BasicPoint<T>& b) {
    const auto d = sub(a, b);
    return dot(d, d);
}

inline Integer lcm_of_denominators(std::span<const Rational> values) {
    Integer l = 1;
    for (const auto& v : values) l = boost::multiprecision::lcm(l, denominator(v));
    return l;
}

namespace detail {

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntegerMatrix = std::vector<std::vector<Integer>>;

/// Fraction-free (Bareiss) determinant of a square integer matrix.
inline Integer bareiss_det(IntegerMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Integer(-m[n - 1][n - 1]);
}

/// Gaussian elimination over the rationals; nullopt when `a` is singular.
inline std::optional<std::vector<Rational>> solve_square(RationalMatrix a, std::vector<Rational> b) {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k].is_zero()) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[k], a[p]);
        std::swap(b[k], b[p]);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k].is_zero()) continue;
            const Rational f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= a[i][j] * x[j];
        x[i] = acc / a[i][i];
    }
    return x;
}

/// Gauss-Jordan inverse; nullopt when singular.
inline std::optional<RationalMatrix> invert(RationalMatrix a) {
    const std::size_t n = a.size();
    RationalMatrix inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k].is_zero()) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[k], a[p]);
        std::swap(inv[k], inv[p]);
        const Rational pivot = a[k][k];
        for (std::size_t j = 0; j < n; ++j) {
            a[k][j] /= pivot;
            inv[k][j] /= pivot;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k].is_zero()) continue;
            const Rational f = a[i][k];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[k][j];
                inv[i][j] -= f * inv[k][j];
            }
        }
    }
    return inv;
}

}  // namespace detail

/// det(GᵀG) for the matrix G whose columns are `vectors`.
///
/// Coordinates are brought to a common integer scale first so the
/// determinant itself runs fraction-free.
template <ExactScalar T>
RationalSq gram_det(std::span<const BasicPoint<T>> vectors) {
    const std::size_t r = vectors.size();
    if (r == 0) return 1;
    const std::size_t d = vectors[0].size();
    for (const auto& v : vectors) detail::require_same_dim(d, v.size());
    if (d < r) throw DimensionMismatch("gram_det needs ambient dimension >= number of vectors");

    std::vector<Rational> flat;
    flat.reserve(r * d);
    for (const auto& v : vectors)
        for (const auto& c : v) flat.push_back(to_rational(c));
    const Integer scale = lcm_of_denominators(flat);

    detail::IntegerMatrix ints(r, std::vector<Integer>(d));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < d; ++k) ints[i][k] = numerator(flat[i * d + k]) * (scale / denominator(flat[i * d + k]));

    detail::IntegerMatrix gram(r, std::vector<Integer>(r));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i; j < r; ++j) {
            Integer acc = 0;
            for (std::size_t k = 0; k < d; ++k) acc += ints[i][k] * ints[j][k];
            gram[i][j] = acc;
            gram[j][i] = acc;
        }
    }
    Integer scale_pow = 1;
    for (std::size_t k = 0; k < 2 * r; ++k) scale_pow *= scale;
    return Rational(detail::bareiss_det(std::move(gram)), scale_pow);
}

template <ExactScalar T>
RationalSq gram_det(const std::vector<BasicPoint<T>>& vectors) {
    return gram_det(std::span<const BasicPoint<T>>(vectors));
}

/// Edge vectors S[k] - S[0], k = 1..r.
template <ExactScalar T>
std::vector<BasicPoint<T>> edge_vectors(std::span<const BasicPoint<T>> simplex) {
    std::vector<BasicPoint<T>> edges;
    if (simplex.empty()) return edges;
    edges.reserve(simplex.size() - 1);
    for (std::size_t k = 1; k < simplex.size(); ++k) edges.push_back(sub(simplex[k], simplex[0]));
    return edges;
}

/// Barycentric coordinates of `p` with respect to the vertices `simplex`.
///
/// Returns nullopt when p lies outside the affine hull. Throws
/// DegenerateSimplex when the vertices are affinely dependent.
template <ExactScalar T>
std::optional<std::vector<Rational>> solve_barycentric(const BasicPoint<T>& p, std::span<const BasicPoint<T>> simplex) {
    if (simplex.empty()) throw DegenerateSimplex("empty simplex");
    const std::size_t d = simplex[0].size();
    detail::require_same_dim(d, p.size());
    for (const auto& v : simplex) detail::require_same_dim(d, v.size());
    const std::size_t r = simplex.size() - 1;
    if (d < r) throw DegenerateSimplex("simplex has more vertices than ambient dimension allows");

    const auto edges = edge_vectors(simplex);
    const auto offset = sub(p, simplex[0]);

    detail::RationalMatrix gram(r, std::vector<Rational>(r));
    std::vector<Rational> rhs(r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i; j < r; ++j) gram[i][j] = gram[j][i] = dot(edges[i], edges[j]);
        rhs[i] = dot(edges[i], offset);
    }
    auto coeffs = detail::solve_square(std::move(gram), std::move(rhs));
    if (!coeffs) throw DegenerateSimplex("affinely dependent vertices");

    // Normal equations project onto the hull; reject if the projection moved p.
    for (std::size_t k = 0; k < d; ++k) {
        Rational acc = 0;
        for (std::size_t i = 0; i < r; ++i) acc += (*coeffs)[i] * to_rational(edges[i][k]);
        if (acc != to_rational(offset[k])) return std::nullopt;
    }

    std::vector<Rational> lambda(r + 1);
    Rational rest = 1;
    for (std::size_t i = 0; i < r; ++i) {
        lambda[i + 1] = (*coeffs)[i];
        rest -= (*coeffs)[i];
    }
    lambda[0] = rest;
    return lambda;
}

template <ExactScalar T>
std::optional<std::vector<Rational>> solve_barycentric(const BasicPoint<T>& p, const std::vector<BasicPoint<T>>& simplex) {
    return solve_barycentric(p, std::span<const BasicPoint<T>>(simplex));
}

/// Barycentric coordinates against a fixed simplex, prepared once and then
/// evaluated with integer arithmetic. Full-dimensional simplices (d == r)
/// use a precomputed scaled inverse; otherwise each query falls back to
/// solve_barycentric.
class BarycentricFrame {
public:
    /// lambda_k = numerators[k] / denominator, denominator > 0.
    struct Coordinates {
        std::vector<Integer> numerators;
        Integer denominator;

        std::vector<Rational> to_rationals() const {
            std::vector<Rational> out;
            out.reserve(numerators.size());
            for (const auto& n : numerators) out.emplace_back(n, denominator);
            return out;
        }
    };

    explicit BarycentricFrame(std::span<const Point> simplex) : vertices_(simplex.begin(), simplex.end()) {
        if (simplex.size() < 2) throw DegenerateSimplex("barycentric frame needs r >= 1");
        const std::size_t r = simplex.size() - 1;
        const std::size_t d = simplex[0].size();
        for (const auto& v : simplex) detail::require_same_dim(d, v.size());
        if (d < r) throw DegenerateSimplex("simplex has more vertices than ambient dimension allows");
        const auto edges = edge_vectors(simplex);
        if (d != r) {
            if (gram_det(edges) == 0) throw DegenerateSimplex("affinely dependent vertices");
            return;
        }
        detail::RationalMatrix e(d, std::vector<Rational>(r));
        for (std::size_t k = 0; k < r; ++k)
            for (std::size_t c = 0; c < d; ++c) e[c][k] = edges[k][c].to_rational();
        auto inv = detail::invert(std::move(e));
        if (!inv) throw DegenerateSimplex("affinely dependent vertices");
        std::vector<Rational> flat;
        for (const auto& row : *inv) flat.insert(flat.end(), row.begin(), row.end());
        scale_ = lcm_of_denominators(flat);
        inverse_.assign(r, std::vector<Integer>(d));
        for (std::size_t k = 0; k < r; ++k)
            for (std::size_t c = 0; c < d; ++c)
                inverse_[k][c] = numerator((*inv)[k][c]) * (scale_ / denominator((*inv)[k][c]));
        full_dimensional_ = true;
    }

    std::size_t dimension() const { return vertices_.size() - 1; }
    const std::vector<Point>& vertices() const { return vertices_; }

    /// nullopt when p is outside the affine hull.
    std::optional<Coordinates> locate(const Point& p) const {
        detail::require_same_dim(vertices_[0].size(), p.size());
        if (!full_dimensional_) {
            auto lambda = solve_barycentric(p, std::span<const Point>(vertices_));
            if (!lambda) return std::nullopt;
            Coordinates out;
            out.denominator = lcm_of_denominators(*lambda);
            for (const auto& l : *lambda) out.numerators.push_back(numerator(l) * (out.denominator / denominator(l)));
            return out;
        }
        const std::size_t r = dimension();
        unsigned e = 0;
        Point offset = sub(p, vertices_[0]);
        for (const auto& c : offset) e = std::max(e, c.exponent());
        std::vector<Integer> w;
        w.reserve(r);
        for (const auto& c : offset) w.push_back(c.scaled_to(e));

        Coordinates out;
        out.denominator = scale_ * pow2(e);
        out.numerators.resize(r + 1);
        Integer rest = out.denominator;
        for (std::size_t k = 0; k < r; ++k) {
            Integer acc = 0;
            for (std::size_t c = 0; c < r; ++c) acc += inverse_[k][c] * w[c];
            rest -= acc;
            out.numerators[k + 1] = std::move(acc);
        }
        out.numerators[0] = std::move(rest);
        return out;
    }

private:
    std::vector<Point> vertices_;
    bool full_dimensional_ = false;
    Integer scale_ = 1;
    detail::IntegerMatrix inverse_;
};

inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Decimal approximation for display only.
inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace freudenthal
