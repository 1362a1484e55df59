#pragma once

// Exact linear algebra over GF(2).
//
// BitVector is an element of F_2^n for n <= 128, packed into two machine
// words. Coordinate 1 (index 0) is the leftmost character of the string form
// and the most significant bit of the first word, so comparing the words as
// unsigned integers gives lexicographic order on bitstrings.
//
// BitRow is a dynamically sized packed row used where dimensions exceed the
// fixed cap (monomial spaces, evaluation tables). Both model the Row concept
// consumed by reduced_echelon() and null_space().

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stabset {

class BitVector {
public:
    static constexpr std::size_t kMaxDim = 128;

    BitVector() = default;

    explicit BitVector(std::size_t n) : dim_(static_cast<std::uint32_t>(n))
    {
        if (n > kMaxDim)
            throw std::invalid_argument("BitVector: dimension " + std::to_string(n) + " exceeds cap " +
                                        std::to_string(kMaxDim));
    }

    /// Parses a string of '0'/'1' characters, coordinate 1 first.
    static BitVector from_string(std::string_view bits)
    {
        BitVector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1')
                v.set(i);
            else if (bits[i] != '0')
                throw std::invalid_argument("BitVector: invalid character in '" + std::string(bits) + "'");
        }
        return v;
    }

    /// The element of rank `code` in lexicographic order of F_2^n (n <= 64).
    static BitVector from_index(std::size_t n, std::uint64_t code)
    {
        if (n > 64)
            throw std::invalid_argument("BitVector::from_index: n > 64");
        BitVector v(n);
        if (n > 0) {
            if (n < 64 && (code >> n) != 0)
                throw std::invalid_argument("BitVector::from_index: code out of range");
            v.w_[0] = code << (64 - n);
        }
        return v;
    }

    /// Inverse of from_index (n <= 64).
    std::uint64_t index() const
    {
        if (dim_ > 64)
            throw std::invalid_argument("BitVector::index: n > 64");
        return dim_ == 0 ? 0 : w_[0] >> (64 - dim_);
    }

    std::size_t dim() const noexcept { return dim_; }

    bool test(std::size_t i) const noexcept { return (w_[i >> 6] >> (63 - (i & 63))) & 1u; }

    void set(std::size_t i, bool value = true)
    {
        if (i >= dim_)
            throw std::out_of_range("BitVector::set: coordinate out of range");
        const std::uint64_t mask = std::uint64_t{1} << (63 - (i & 63));
        if (value)
            w_[i >> 6] |= mask;
        else
            w_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) { set(i, !test(i)); }

    BitVector& operator^=(const BitVector& other)
    {
        if (dim_ != other.dim_)
            throw std::invalid_argument("BitVector: dimension mismatch (" + std::to_string(dim_) + " vs " +
                                        std::to_string(other.dim_) + ")");
        w_[0] ^= other.w_[0];
        w_[1] ^= other.w_[1];
        return *this;
    }
    BitVector& operator+=(const BitVector& other) { return *this ^= other; }

    friend BitVector operator+(BitVector a, const BitVector& b) { return a += b; }

    bool is_zero() const noexcept { return (w_[0] | w_[1]) == 0; }

    std::size_t weight() const noexcept
    {
        return static_cast<std::size_t>(std::popcount(w_[0]) + std::popcount(w_[1]));
    }

    /// Parity of the coordinatewise product.
    bool dot(const BitVector& other) const noexcept
    {
        return (std::popcount(w_[0] & other.w_[0]) + std::popcount(w_[1] & other.w_[1])) & 1;
    }

    /// Index of the first (leftmost) set coordinate.
    std::optional<std::size_t> first_set() const noexcept
    {
        if (w_[0] != 0)
            return static_cast<std::size_t>(std::countl_zero(w_[0]));
        if (w_[1] != 0)
            return 64 + static_cast<std::size_t>(std::countl_zero(w_[1]));
        return std::nullopt;
    }

    std::string to_string() const
    {
        std::string out(dim_, '0');
        for (std::size_t i = 0; i < dim_; ++i)
            if (test(i))
                out[i] = '1';
        return out;
    }

    /// Copy into a larger ambient space, keeping coordinates 1..dim().
    BitVector widened(std::size_t n) const
    {
        if (n < dim_)
            throw std::invalid_argument("BitVector::widened: target smaller than source");
        BitVector v(n);
        v.w_ = w_;
        return v;
    }

    std::size_t hash() const noexcept
    {
        std::uint64_t h = w_[0] * 0x9E3779B97F4A7C15ull;
        h ^= (w_[1] + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2));
        h ^= dim_ * 0xC2B2AE3D27D4EB4Full;
        return static_cast<std::size_t>(h ^ (h >> 29));
    }

    friend bool operator==(const BitVector&, const BitVector&) = default;

    /// Orders by dimension, then lexicographically.
    friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) noexcept
    {
        if (auto c = a.dim_ <=> b.dim_; c != 0)
            return c;
        if (auto c = a.w_[0] <=> b.w_[0]; c != 0)
            return c;
        return a.w_[1] <=> b.w_[1];
    }

private:
    std::uint32_t dim_ = 0;
    std::array<std::uint64_t, 2> w_{};
};

struct BitVectorHash {
    std::size_t operator()(const BitVector& v) const noexcept { return v.hash(); }
};

/// Group law of F_2^n.
inline BitVector add(const BitVector& x, const BitVector& y) { return x + y; }

/// Growable packed row; bit order is internal (LSB first).
class BitRow {
public:
    BitRow() = default;
    explicit BitRow(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const noexcept { return n_; }
    bool test(std::size_t i) const noexcept { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool value = true)
    {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            w_[i >> 6] |= mask;
        else
            w_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitRow& operator^=(const BitRow& other)
    {
        if (n_ != other.n_)
            throw std::invalid_argument("BitRow: size mismatch");
        for (std::size_t i = 0; i < w_.size(); ++i)
            w_[i] ^= other.w_[i];
        return *this;
    }
    friend BitRow operator^(BitRow a, const BitRow& b) { return a ^= b; }

    bool is_zero() const noexcept
    {
        return std::all_of(w_.begin(), w_.end(), [](std::uint64_t w) { return w == 0; });
    }
    std::size_t count() const noexcept
    {
        std::size_t c = 0;
        for (auto w : w_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    /// Indices of set bits in increasing order.
    std::vector<std::size_t> ones() const
    {
        std::vector<std::size_t> out;
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t w = w_[wi];
            while (w != 0) {
                out.push_back(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
        return out;
    }

    friend bool operator==(const BitRow&, const BitRow&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

template <class Row>
concept GF2Row = std::copyable<Row> && requires(Row r, const Row& c, std::size_t i) {
    { c.test(i) } -> std::convertible_to<bool>;
    { r ^= c };
    { c.is_zero() } -> std::convertible_to<bool>;
};

template <GF2Row Row>
struct Echelon {
    std::vector<Row> rows;             ///< nonzero rows, reduced, one per pivot
    std::vector<std::size_t> pivots;   ///< pivot column of each row, increasing
    std::size_t rank() const noexcept { return rows.size(); }
};

/// Reduced row-echelon form; pivots are taken leftmost column first.
template <GF2Row Row>
Echelon<Row> reduced_echelon(std::vector<Row> rows, std::size_t ncols)
{
    Echelon<Row> out;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot].test(col))
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && rows[r].test(col))
                rows[r] ^= rows[rank];
        out.pivots.push_back(col);
        ++rank;
    }
    rows.resize(rank);
    out.rows = std::move(rows);
    return out;
}

template <GF2Row Row>
std::size_t rank_of(std::vector<Row> rows, std::size_t ncols)
{
    return reduced_echelon(std::move(rows), ncols).rank();
}

/// Basis of {x : <row, x> = 0 for every row}. One vector per free column f,
/// with x_f = 1 and pivot coordinates read off the reduced rows.
template <GF2Row Row, class MakeZero, class SetBit>
std::vector<Row> null_space(const Echelon<Row>& ech, std::size_t ncols, MakeZero make_zero, SetBit set_bit)
{
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : ech.pivots)
        is_pivot[p] = true;
    std::vector<Row> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f])
            continue;
        Row x = make_zero();
        set_bit(x, f);
        for (std::size_t r = 0; r < ech.rows.size(); ++r)
            if (ech.rows[r].test(f))
                set_bit(x, ech.pivots[r]);
        basis.push_back(std::move(x));
    }
    return basis;
}

inline std::vector<BitRow> null_space(const std::vector<BitRow>& rows, std::size_t ncols)
{
    auto ech = reduced_echelon(rows, ncols);
    return null_space(
        ech, ncols, [ncols] { return BitRow(ncols); }, [](BitRow& r, std::size_t i) { r.set(i); });
}

/// A linear subspace of F_2^n held by its reduced row-echelon basis.
class Subspace2 {
public:
    explicit Subspace2(std::size_t n = 0) : n_(n) {}

    static Subspace2 span(std::size_t n, std::vector<BitVector> generators)
    {
        for (const auto& g : generators)
            if (g.dim() != n)
                throw std::invalid_argument("Subspace2::span: generator dimension mismatch");
        Subspace2 s(n);
        auto ech = reduced_echelon(std::move(generators), n);
        s.basis_ = std::move(ech.rows);
        s.pivots_ = std::move(ech.pivots);
        return s;
    }

    std::size_t ambient_dim() const noexcept { return n_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<BitVector>& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    /// 2^dim, as long as it fits.
    std::uint64_t size() const
    {
        if (dim() >= 64)
            throw std::overflow_error("Subspace2::size: too large");
        return std::uint64_t{1} << dim();
    }

    bool contains(BitVector x) const
    {
        if (x.dim() != n_)
            throw std::invalid_argument("Subspace2::contains: dimension mismatch");
        for (std::size_t r = 0; r < basis_.size(); ++r)
            if (x.test(pivots_[r]))
                x ^= basis_[r];
        return x.is_zero();
    }

    /// All elements, ordered by the binary counter over the basis (dim <= 24).
    std::vector<BitVector> elements() const
    {
        if (dim() > 24)
            throw std::length_error("Subspace2::elements: subspace too large to enumerate");
        std::vector<BitVector> out;
        out.reserve(std::size_t{1} << dim());
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << dim()); ++mask) {
            BitVector v(n_);
            for (std::size_t b = 0; b < dim(); ++b)
                if ((mask >> (dim() - 1 - b)) & 1u)
                    v ^= basis_[b];
            out.push_back(v);
        }
        return out;
    }

    friend bool operator==(const Subspace2&, const Subspace2&) = default;

private:
    std::size_t n_;
    std::vector<BitVector> basis_;
    std::vector<std::size_t> pivots_;
};

/// Homomorphism F_2^n -> F_2^m stored as m rows of length n.
class LinearMap2 {
public:
    LinearMap2(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), rows_(rows, BitVector(cols)) {}

    LinearMap2(std::size_t cols, std::vector<BitVector> rows) : m_(rows.size()), n_(cols), rows_(std::move(rows))
    {
        for (const auto& r : rows_)
            if (r.dim() != n_)
                throw std::invalid_argument("LinearMap2: row length mismatch");
    }

    static LinearMap2 identity(std::size_t n)
    {
        LinearMap2 id(n, n);
        for (std::size_t i = 0; i < n; ++i)
            id.rows_[i].set(i);
        return id;
    }

    std::size_t rows() const noexcept { return m_; }
    std::size_t cols() const noexcept { return n_; }
    const std::vector<BitVector>& matrix() const noexcept { return rows_; }

    bool entry(std::size_t i, std::size_t j) const { return rows_.at(i).test(j); }
    void set_entry(std::size_t i, std::size_t j, bool v = true) { rows_.at(i).set(j, v); }

    BitVector apply(const BitVector& x) const
    {
        if (x.dim() != n_)
            throw std::invalid_argument("LinearMap2::apply: input dimension " + std::to_string(x.dim()) +
                                        ", expected " + std::to_string(n_));
        BitVector y(m_);
        for (std::size_t i = 0; i < m_; ++i)
            if (rows_[i].dot(x))
                y.set(i);
        return y;
    }
    BitVector operator()(const BitVector& x) const { return apply(x); }

    std::size_t rank() const { return rank_of(rows_, n_); }

    Subspace2 kernel() const
    {
        auto ech = reduced_echelon(rows_, n_);
        const std::size_t n = n_;
        auto basis = null_space(
            ech, n, [n] { return BitVector(n); }, [](BitVector& v, std::size_t i) { v.set(i); });
        return Subspace2::span(n_, std::move(basis));
    }

    /// outer ∘ inner.
    friend LinearMap2 compose(const LinearMap2& outer, const LinearMap2& inner)
    {
        if (outer.n_ != inner.m_)
            throw std::invalid_argument("compose: inner codomain does not match outer domain");
        LinearMap2 out(outer.m_, inner.n_);
        for (std::size_t i = 0; i < outer.m_; ++i)
            for (std::size_t j = 0; j < outer.n_; ++j)
                if (outer.rows_[i].test(j))
                    out.rows_[i] ^= inner.rows_[j];
        return out;
    }

    friend bool operator==(const LinearMap2&, const LinearMap2&) = default;

private:
    std::size_t m_;
    std::size_t n_;
    std::vector<BitVector> rows_;
};

/// Surjection F_2^n -> F_2^{n-1} with kernel exactly {0, x}. Pivots on the
/// first set coordinate p of x: y maps to y + y_p x with coordinate p dropped.
inline LinearMap2 quotient_map(std::size_t n, const BitVector& x)
{
    if (x.dim() != n)
        throw std::invalid_argument("quotient_map: x has dimension " + std::to_string(x.dim()) + ", expected " +
                                    std::to_string(n));
    const auto p = x.first_set();
    if (!p)
        throw std::invalid_argument("quotient_map: cannot quotient by the zero vector");
    LinearMap2 theta(n - 1, n);
    std::size_t out = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (c == *p)
            continue;
        theta.set_entry(out, c);
        if (x.test(c))
            theta.set_entry(out, *p);
        ++out;
    }
    return theta;
}

// Finite subsets of F_2^n are kept as sorted vectors without duplicates.

inline void canonicalize(std::vector<BitVector>& xs)
{
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

inline bool sorted_contains(const std::vector<BitVector>& sorted, const BitVector& x)
{
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

/// {x + y : x in X, y in Y}, sorted and deduplicated.
inline std::vector<BitVector> sumset(const std::vector<BitVector>& xs, const std::vector<BitVector>& ys)
{
    std::vector<BitVector> out;
    out.reserve(xs.size() * ys.size());
    for (const auto& x : xs)
        for (const auto& y : ys)
            out.push_back(x + y);
    canonicalize(out);
    return out;
}

/// Image of a set under a linear map, sorted and deduplicated.
inline std::vector<BitVector> image(const LinearMap2& f, const std::vector<BitVector>& xs)
{
    std::vector<BitVector> out;
    out.reserve(xs.size());
    for (const auto& x : xs)
        out.push_back(f(x));
    canonicalize(out);
    return out;
}

/// All 2^n elements of F_2^n in lexicographic order (n <= 24).
inline std::vector<BitVector> all_vectors(std::size_t n)
{
    if (n > 24)
        throw std::length_error("all_vectors: n too large to enumerate");
    std::vector<BitVector> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c)
        out.push_back(BitVector::from_index(n, c));
    return out;
}

} // namespace stabset

template <>
struct std::hash<stabset::BitVector> {
    std::size_t operator()(const stabset::BitVector& v) const noexcept { return v.hash(); }
};
