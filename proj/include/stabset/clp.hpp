#pragma once

// Polynomial-method certificates over F_2^n: monomial spaces S_n^d, binary
// entropy estimates, polynomials vanishing off A, a maximal-support element
// of that space, and the rank of (P(s_i + t_j)) for a witness.
//
// Points of F_2^n (n <= 20 here) are handled as masks with bit c holding
// coordinate c+1; a monomial prod_{i in I} x_i is the mask of I and
// evaluates to 1 at x iff I is a subset of x.

#include "stabset/gf2.hpp"
#include "stabset/orderprop.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabset {

using Count = unsigned __int128;

inline std::string to_string(Count v)
{
    if (v == 0)
        return "0";
    std::string out;
    while (v != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return {out.rbegin(), out.rend()};
}

inline Count binomial(std::size_t n, std::size_t r)
{
    if (r > n)
        return 0;
    r = std::min(r, n - r);
    Count acc = 1;
    for (std::size_t i = 1; i <= r; ++i)
        acc = acc * (n - r + i) / i;
    return acc;
}

/// dim S_n^d = sum_{r <= d} C(n, r), exact for n <= 64.
inline Count dim_Snd(std::size_t n, std::size_t d)
{
    if (n > 64)
        throw std::invalid_argument("dim_Snd: n must be at most 64");
    if (d > n)
        throw std::invalid_argument("dim_Snd: need 0 <= d <= n");
    Count total = 0;
    for (std::size_t r = 0; r <= d; ++r)
        total += binomial(n, r);
    return total;
}

/// Binary entropy with H(0) = H(1) = 0.
inline double entropy(double p)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("entropy: p must lie in [0, 1]");
    if (p == 0.0 || p == 1.0)
        return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

struct EntropyCheck {
    Count lhs;   ///< sum_{r >= pn} C(n, r)
    double rhs;  ///< 2^{H(p) n}
    bool holds;
};

/// The tail estimate sum_{r=pn}^{n} C(n,r) <= 2^{H(p)n} for p = r/n in (1/2, 1].
inline EntropyCheck entropy_bound_check(std::size_t n, std::size_t r)
{
    if (n == 0 || r > n || 2 * r <= n)
        throw std::invalid_argument("entropy_bound_check: need p = r/n in (1/2, 1]");
    EntropyCheck c{};
    for (std::size_t j = r; j <= n; ++j)
        c.lhs += binomial(n, j);
    const double p = static_cast<double>(r) / static_cast<double>(n);
    c.rhs = std::exp2(entropy(p) * static_cast<double>(n));
    c.holds = static_cast<long double>(c.lhs) <= static_cast<long double>(c.rhs) * (1.0L + 1e-9L);
    return c;
}

inline EntropyCheck entropy_bound_check(std::size_t n, double p)
{
    const double pn = p * static_cast<double>(n);
    const double r = std::round(pn);
    if (std::abs(pn - r) > 1e-9)
        throw std::invalid_argument("entropy_bound_check: pn must be an integer");
    return entropy_bound_check(n, static_cast<std::size_t>(r));
}

/// M_n^d: subsets I of [n] with |I| <= d, ordered by degree then lexicographically.
class MonomialBasis {
public:
    static constexpr std::size_t kMaxVars = 20;

    MonomialBasis(std::size_t n, std::size_t d) : n_(n), d_(d)
    {
        if (n > kMaxVars)
            throw std::invalid_argument("MonomialBasis: at most " + std::to_string(kMaxVars) + " variables");
        if (d > n)
            throw std::invalid_argument("MonomialBasis: need 0 <= d <= n");
        index_.assign(std::size_t{1} << n, kAbsent);
        for (std::size_t deg = 0; deg <= d; ++deg) {
            std::vector<std::uint32_t> layer;
            for (std::uint32_t m = 0; m < (1u << n); ++m)
                if (static_cast<std::size_t>(std::popcount(m)) == deg)
                    layer.push_back(m);
            // lexicographic on the sorted index list = descending bit-reversed order
            std::sort(layer.begin(), layer.end(), [](std::uint32_t a, std::uint32_t b) {
                while (a != 0 && b != 0) {
                    const int ca = std::countr_zero(a), cb = std::countr_zero(b);
                    if (ca != cb)
                        return ca < cb;
                    a &= a - 1;
                    b &= b - 1;
                }
                return a == 0 && b != 0;
            });
            for (auto m : layer) {
                index_[m] = monomials_.size();
                monomials_.push_back(m);
            }
        }
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t d() const noexcept { return d_; }
    std::size_t dim() const noexcept { return monomials_.size(); }
    const std::vector<std::uint32_t>& monomials() const noexcept { return monomials_; }
    std::uint32_t monomial(std::size_t idx) const { return monomials_.at(idx); }

    std::optional<std::size_t> index_of(std::uint32_t mask) const
    {
        if (mask >= index_.size() || index_[mask] == kAbsent)
            return std::nullopt;
        return index_[mask];
    }

private:
    static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();
    std::size_t n_, d_;
    std::vector<std::uint32_t> monomials_;
    std::vector<std::size_t> index_;
};

inline std::uint32_t to_mask(const BitVector& x)
{
    std::uint32_t m = 0;
    for (std::size_t c = 0; c < x.dim(); ++c)
        if (x.test(c))
            m |= 1u << c;
    return m;
}

inline BitVector from_mask(std::size_t n, std::uint32_t mask)
{
    BitVector x(n);
    for (std::size_t c = 0; c < n; ++c)
        if ((mask >> c) & 1u)
            x.set(c);
    return x;
}

/// Multilinear polynomial over F_2 with coefficients on a monomial basis.
class Poly2 {
public:
    Poly2(std::shared_ptr<const MonomialBasis> basis, BitRow coeffs) : basis_(std::move(basis)), coeffs_(std::move(coeffs))
    {
        if (coeffs_.size() != basis_->dim())
            throw std::invalid_argument("Poly2: coefficient vector does not match basis");
    }

    static Poly2 zero(std::shared_ptr<const MonomialBasis> basis)
    {
        const auto dim = basis->dim();
        return Poly2(std::move(basis), BitRow(dim));
    }

    const MonomialBasis& basis() const noexcept { return *basis_; }
    const std::shared_ptr<const MonomialBasis>& basis_ptr() const noexcept { return basis_; }
    const BitRow& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.is_zero(); }

    bool eval(std::uint32_t x) const
    {
        bool v = false;
        for (auto idx : coeffs_.ones())
            v ^= (basis_->monomial(idx) & ~x) == 0;
        return v;
    }
    bool eval(const BitVector& x) const { return eval(to_mask(x)); }

    /// Values at all 2^n points by the subset-sum transform.
    BitRow truth_table() const
    {
        const std::size_t n = basis_->n();
        std::vector<std::uint8_t> f(std::size_t{1} << n, 0);
        for (auto idx : coeffs_.ones())
            f[basis_->monomial(idx)] ^= 1;
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t x = 0; x < f.size(); ++x)
                if ((x >> c) & 1u)
                    f[x] ^= f[x ^ (std::size_t{1} << c)];
        BitRow out(f.size());
        for (std::size_t x = 0; x < f.size(); ++x)
            if (f[x])
                out.set(x);
        return out;
    }

    Poly2& operator+=(const Poly2& o)
    {
        coeffs_ ^= o.coeffs_;
        return *this;
    }
    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }

    friend bool operator==(const Poly2& a, const Poly2& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::shared_ptr<const MonomialBasis> basis_;
    BitRow coeffs_;
};

struct VanishingSpace {
    std::shared_ptr<const MonomialBasis> basis;
    std::vector<Poly2> polys;        ///< basis of V, reduced echelon in coefficients
    std::size_t complement_size = 0; ///< |¬A|
    std::size_t eval_rank = 0;       ///< rank of the evaluation matrix on ¬A

    std::size_t dim() const noexcept { return polys.size(); }
    /// dim S_n^d - |¬A|, possibly negative.
    long long lower_bound() const
    {
        return static_cast<long long>(basis->dim()) - static_cast<long long>(complement_size);
    }
};

inline constexpr std::size_t kMaxClpDim = 14;

/// V = {F in S_n^d : F(x) = 0 for all x outside A}, the kernel of the
/// evaluation matrix with one row per point of ¬A and one column per monomial.
inline VanishingSpace vanishing_space(const F2Set& A, std::size_t d)
{
    const std::size_t n = A.ambient().n;
    if (n > kMaxClpDim)
        throw std::invalid_argument("vanishing_space: n must be at most " + std::to_string(kMaxClpDim));
    if (d > n)
        throw std::invalid_argument("vanishing_space: need 0 <= d <= n");
    auto basis = std::make_shared<const MonomialBasis>(n, d);
    const std::size_t cols = basis->dim();
    std::vector<bool> in_A(std::size_t{1} << n, false);
    for (const auto& x : A.elements())
        in_A[to_mask(x)] = true;

    std::vector<BitRow> rows;
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
        if (in_A[x])
            continue;
        BitRow r(cols);
        for (std::size_t c = 0; c < cols; ++c)
            if ((basis->monomial(c) & ~x) == 0)
                r.set(c);
        rows.push_back(std::move(r));
    }
    VanishingSpace V;
    V.basis = basis;
    V.complement_size = rows.size();
    auto ech = reduced_echelon(std::move(rows), cols);
    V.eval_rank = ech.rank();
    auto kernel = null_space(
        ech, cols, [cols] { return BitRow(cols); }, [](BitRow& r, std::size_t i) { r.set(i); });
    auto canon = reduced_echelon(std::move(kernel), cols);
    for (auto& c : canon.rows)
        V.polys.emplace_back(basis, std::move(c));
    return V;
}

struct MaxSupport {
    Poly2 P;
    std::vector<std::uint32_t> support; ///< points with P = 1, increasing masks
    std::size_t iterations = 0;
};

/// Grows the support of an element of V until no nonzero Q in V vanishes on
/// it. Each round adds such a Q (the sum of a kernel basis), whose support
/// is disjoint from supp(P), so the support strictly grows. At the end the
/// restriction map V -> F_2^{supp P} is injective, hence |supp P| >= dim V.
inline MaxSupport max_support_poly(const std::vector<Poly2>& V)
{
    if (V.empty())
        throw std::invalid_argument("max_support_poly: the space is zero-dimensional");
    const std::size_t D = V.size();
    std::vector<BitRow> tables;
    tables.reserve(D);
    for (const auto& q : V)
        tables.push_back(q.truth_table());

    Poly2 P = V.front();
    BitRow table = tables.front();
    MaxSupport out{P, {}, 0};
    while (true) {
        ++out.iterations;
        const auto supp = table.ones();
        std::vector<BitRow> rows;
        rows.reserve(supp.size());
        for (auto x : supp) {
            BitRow r(D);
            for (std::size_t b = 0; b < D; ++b)
                if (tables[b].test(x))
                    r.set(b);
            rows.push_back(std::move(r));
        }
        const auto kernel = null_space(rows, D);
        if (kernel.empty()) {
            out.P = P;
            out.support.assign(supp.begin(), supp.end());
            break;
        }
        BitRow lambda(D);
        for (const auto& k : kernel)
            lambda ^= k;
        for (auto b : lambda.ones()) {
            P += V[b];
            table ^= tables[b];
        }
    }
    return out;
}

struct CertificateOptions {
    /// Accept any p in (1/2, 1], with d = ceil(np) - 1 and split threshold
    /// floor(d/2). Otherwise np must be an odd integer and d = np - 1.
    bool relaxed = false;
};

struct RankCertificate {
    std::size_t n = 0;
    std::size_t d = 0;
    double p = 0;
    std::size_t dimV = 0;
    std::size_t support_size = 0;
    std::size_t I_size = 0;
    std::size_t rank = 0;
    std::size_t rank_by_columns = 0;
    Count upper = 0;
    std::size_t k = 0;
    bool half_k_guaranteed = false; ///< k >= 2^{H(p)n+1}, so I_size >= k/2 must hold

    static std::string csv_header() { return "n,d,p,dimV,support,I,rank,upper,k"; }

    std::string csv_row() const
    {
        std::ostringstream os;
        os << n << "," << d << "," << p << "," << dimV << "," << support_size << "," << I_size << "," << rank << ","
           << to_string(upper) << "," << k;
        return os.str();
    }

    std::string text() const
    {
        std::ostringstream os;
        os << "n            " << n << "\n"
           << "d            " << d << " (split at " << d / 2 << ")\n"
           << "p            " << p << "\n"
           << "k            " << k << "\n"
           << "dim V        " << dimV << "\n"
           << "|supp P|     " << support_size << "\n"
           << "|I|          " << I_size << "\n"
           << "rank         " << rank << "\n"
           << "upper bound  " << to_string(upper) << "\n"
           << "I <= rank <= upper: " << ((I_size <= rank && Count(rank) <= upper) ? "yes" : "no") << "\n";
        if (half_k_guaranteed)
            os << "k >= 2^{H(p)n+1}: |I| >= k/2 " << (2 * I_size >= k ? "holds" : "FAILS") << "\n";
        return os.str();
    }
};

/// Degree cap used by rank_certificate for a given n and p.
inline std::size_t certificate_degree(std::size_t n, double p, bool relaxed)
{
    if (!(p > 0.5 && p <= 1.0))
        throw std::domain_error("rank_certificate: p must lie in (1/2, 1]");
    const double pn = p * static_cast<double>(n);
    const double r = std::round(pn);
    const bool integral = std::abs(pn - r) < 1e-9;
    if (!relaxed) {
        if (!integral || static_cast<long long>(r) % 2 == 0)
            throw std::invalid_argument("rank_certificate: np must be an odd integer (use relaxed mode otherwise)");
        return static_cast<std::size_t>(r) - 1;
    }
    const double up = integral ? r : std::ceil(pn);
    return up >= 1.0 ? static_cast<std::size_t>(up) - 1 : 0;
}

/// Builds P of maximal support in S_n^d vanishing off A, then the k x k
/// matrix (P(s_i + t_j)). Since P(s_i + t_j) = 0 for j < i the rows indexed
/// by I = {i : P(s_i + t_i) = 1} are independent, and P(x + y) splits through
/// monomials of degree <= floor(d/2) in x or in y, so
/// |I| <= rank <= 2 dim S_n^{floor(d/2)}.
inline RankCertificate rank_certificate(const F2Set& A, const F2Witness& w, double p,
                                        const CertificateOptions& opts = {})
{
    const std::size_t n = A.ambient().n;
    if (n > kMaxClpDim)
        throw std::invalid_argument("rank_certificate: n must be at most " + std::to_string(kMaxClpDim));
    const auto verdict = verify_witness(A, w);
    if (!verdict.valid)
        throw std::invalid_argument("rank_certificate: witness does not verify: " + verdict.describe());

    RankCertificate c;
    c.n = n;
    c.p = p;
    c.k = w.k();
    c.d = std::min(certificate_degree(n, p, opts.relaxed), n);
    c.upper = 2 * dim_Snd(n, c.d / 2);
    c.half_k_guaranteed = static_cast<double>(c.k) >= std::exp2(entropy(p) * static_cast<double>(n) + 1.0);

    const auto V = vanishing_space(A, c.d);
    c.dimV = V.dim();
    BitRow table(std::size_t{1} << n);
    if (c.dimV > 0) {
        const auto best = max_support_poly(V.polys);
        c.support_size = best.support.size();
        table = best.P.truth_table();
    }

    const std::size_t k = w.k();
    std::vector<BitRow> rows(k, BitRow(k)), cols(k, BitRow(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (table.test(to_mask(w.cell(i, j)))) {
                rows[i].set(j);
                cols[j].set(i);
            }
    for (std::size_t i = 0; i < k; ++i)
        c.I_size += rows[i].test(i);
    c.rank = rank_of(std::move(rows), k);
    c.rank_by_columns = rank_of(std::move(cols), k);

    if (c.rank != c.rank_by_columns)
        throw std::logic_error("rank_certificate: row and column rank disagree");
    if (c.I_size > c.rank || Count(c.rank) > c.upper)
        throw std::logic_error("rank_certificate: |I| <= rank <= upper violated");
    if (c.support_size < c.dimV)
        throw std::logic_error("rank_certificate: support smaller than dim V");
    if (c.half_k_guaranteed && 2 * c.I_size < c.k)
        throw std::logic_error("rank_certificate: |I| < k/2 although k >= 2^{H(p)n+1}");
    return c;
}

struct StabilityBound {
    double log2_bound; ///< log2 of max{2^{H(p)n+1}, 2^{H(1-p/2)n+2}} at p_star
    double k_bound;    ///< 2^log2_bound; infinite once n exceeds about 1100
    double p_star;
    std::size_t r_star; ///< p_star = r_star / n
};

/// Minimizes max{H(p)n + 1, H(1 - p/2)n + 2} over p = r/n in (1/2, 1] with r odd.
inline StabilityBound stability_upper_bound(std::size_t n)
{
    if (n < 3)
        throw std::invalid_argument("stability_upper_bound: n must be at least 3");
    std::optional<StabilityBound> best;
    const double N = static_cast<double>(n);
    for (std::size_t r = n / 2 + 1; r <= n; ++r) {
        if (r % 2 == 0)
            continue;
        const double p = static_cast<double>(r) / N;
        const double e = std::max(entropy(p) * N + 1.0, entropy(1.0 - p / 2.0) * N + 2.0);
        if (!best || e < best->log2_bound)
            best = StabilityBound{e, std::exp2(e), p, r};
    }
    if (!best)
        throw std::invalid_argument("stability_upper_bound: no admissible p");
    return *best;
}

struct TheoremConstant {
    double c0; ///< 1 - H(2/3)
    double c;  ///< c0 / (15 - 14 c0)
};

inline TheoremConstant theorem_constant()
{
    const double c0 = 1.0 - entropy(2.0 / 3.0);
    return {c0, c0 / (15.0 - 14.0 * c0)};
}

} // namespace stabset
