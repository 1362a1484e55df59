#pragma once

// Explicit sets carrying long order-property witnesses: arithmetic
// progressions in Z and the dyadic construction in F_2^n whose order grows
// like |A|^{1/(2-c)}.

#include "stabset/orderprop.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabset {

template <class Elem>
struct ConstructedInstance {
    FiniteSet<Elem> A;
    Witness<Elem> witness;
    std::map<std::string, double> meta;
};

/// A = {x, x+d, ..., x+(N-1)d} with s_i = x - id and t_i = id, so
/// s_i + t_j = x + (j-i)d lies in A exactly when 0 <= j-i <= N-1.
inline ConstructedInstance<std::int64_t> ap_witness(std::int64_t x, std::int64_t d, std::int64_t N)
{
    if (d == 0)
        throw std::invalid_argument("ap_witness: common difference must be nonzero");
    if (N <= 0)
        throw std::invalid_argument("ap_witness: length must be positive");
    using wide = __int128;
    constexpr wide lo = std::numeric_limits<std::int64_t>::min();
    constexpr wide hi = std::numeric_limits<std::int64_t>::max();
    // every value touched: x + m d for |m| <= N, and N d
    for (wide m : {-wide(N), wide(N)})
        if (wide(x) + m * wide(d) < lo || wide(x) + m * wide(d) > hi)
            throw std::overflow_error("ap_witness: progression leaves the 64-bit range");
    if (wide(N) * wide(d) < lo || wide(N) * wide(d) > hi)
        throw std::overflow_error("ap_witness: progression leaves the 64-bit range");

    std::vector<std::int64_t> a, s, t;
    for (std::int64_t i = 0; i < N; ++i)
        a.push_back(x + i * d);
    for (std::int64_t i = 1; i <= N; ++i) {
        s.push_back(x - i * d);
        t.push_back(i * d);
    }
    ConstructedInstance<std::int64_t> inst{make_z_set(std::move(a)), ZWitness(Ambient::z(), std::move(s), std::move(t)),
                                           {}};
    inst.meta = {{"x", double(x)}, {"d", double(d)}, {"N", double(N)}, {"k", double(N)}};
    return inst;
}

inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t r)
{
    if (r > n)
        return 0;
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i)
        acc = acc * (n - r + i) / i;
    return static_cast<std::uint64_t>(acc);
}

/// Parameters of the dyadic construction.
///
/// Coordinates 1..2l carry the subspaces V_S. The next ceil(log2 R)
/// coordinates carry the binary code of i-1 for u_i, and the block after
/// that the code of j-1 for w_j, so the cosets u_i + w_j + V_[2l] are
/// pairwise disjoint.
class DyadicPlan {
public:
    static constexpr std::size_t kMaxL = 4;

    explicit DyadicPlan(std::size_t l) : l_(l)
    {
        if (l < 1 || l > kMaxL)
            throw std::invalid_argument("dyadic_plan: l must be in 1.." + std::to_string(kMaxL));
        R_ = binomial_u64(2 * l, l);
        tag_bits_ = std::bit_width(R_ - 1);

        // l-subsets of [2l] as masks (bit c = coordinate c+1), lexicographic
        // on sorted element lists: the next unpaired subset takes the front
        // slot and its complement the mirrored back slot
        std::vector<std::uint32_t> subsets;
        for (std::uint32_t m = 0; m < (1u << (2 * l)); ++m)
            if (std::popcount(m) == static_cast<int>(l))
                subsets.push_back(m);
        std::sort(subsets.begin(), subsets.end(), [](std::uint32_t a, std::uint32_t b) {
            return elements_of(a) < elements_of(b);
        });
        const std::uint32_t full = (1u << (2 * l)) - 1;
        subsets_.assign(R_, 0);
        std::vector<bool> used(std::size_t{1} << (2 * l), false);
        std::size_t front = 0;
        for (auto m : subsets) {
            if (used[m])
                continue;
            subsets_[front] = m;
            subsets_[R_ - 1 - front] = full ^ m;
            used[m] = used[full ^ m] = true;
            ++front;
        }
    }

    std::size_t l() const noexcept { return l_; }
    std::size_t R() const noexcept { return R_; }
    std::size_t block() const noexcept { return std::size_t{1} << l_; }
    std::size_t k() const noexcept { return R_ * block(); }
    std::size_t tag_bits() const noexcept { return tag_bits_; }
    std::size_t dim() const noexcept { return 2 * l_ + 2 * tag_bits_; }

    /// S_r as a coordinate mask, r = 1..R.
    std::uint32_t subset(std::size_t r) const { return subsets_.at(r - 1); }

    /// Sorted 1-based coordinates of S_r.
    std::vector<std::size_t> subset_elements(std::size_t r) const
    {
        auto e = elements_of(subset(r));
        for (auto& c : e)
            ++c;
        return e;
    }

    BitVector u(std::size_t i) const { return tag(i - 1, 2 * l_); }
    BitVector w(std::size_t j) const { return tag(j - 1, 2 * l_ + tag_bits_); }

    /// v_m^{(r)}, m = 1..2^l: the binary digits of m-1 spread over S_r, most
    /// significant digit on its smallest coordinate (lexicographic order).
    BitVector v(std::size_t r, std::size_t m) const
    {
        const auto coords = elements_of(subset(r));
        BitVector out(dim());
        const std::size_t code = m - 1;
        for (std::size_t b = 0; b < coords.size(); ++b)
            if ((code >> (coords.size() - 1 - b)) & 1u)
                out.set(coords[b]);
        return out;
    }

    /// All elements of V_S for a coordinate mask S, lexicographic.
    std::vector<BitVector> span_of(std::uint32_t mask) const
    {
        const auto coords = elements_of(mask);
        std::vector<BitVector> out;
        for (std::size_t code = 0; code < (std::size_t{1} << coords.size()); ++code) {
            BitVector x(dim());
            for (std::size_t b = 0; b < coords.size(); ++b)
                if ((code >> (coords.size() - 1 - b)) & 1u)
                    x.set(coords[b]);
            out.push_back(x);
        }
        return out;
    }

    /// |A| computed from the plan: sum over i < j of 2^{|S_i ∪ S_{R+1-j}|}
    /// plus R * 2^{l-1} (2^l + 1) for the diagonal blocks.
    std::uint64_t exact_size() const
    {
        std::uint64_t total = 0;
        for (std::size_t i = 1; i <= R_; ++i)
            for (std::size_t j = i + 1; j <= R_; ++j)
                total += std::uint64_t{1} << std::popcount(subset(i) | subset(R_ + 1 - j));
        total += R_ * (std::uint64_t{1} << (l_ - 1)) * (block() + 1);
        return total;
    }

private:
    static std::vector<std::size_t> elements_of(std::uint32_t mask)
    {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < 32; ++c)
            if ((mask >> c) & 1u)
                out.push_back(c);
        return out;
    }

    BitVector tag(std::size_t code, std::size_t offset) const
    {
        BitVector x(dim());
        for (std::size_t b = 0; b < tag_bits_; ++b)
            if ((code >> (tag_bits_ - 1 - b)) & 1u)
                x.set(offset + b);
        return x;
    }

    std::size_t l_;
    std::size_t R_;
    std::size_t tag_bits_;
    std::vector<std::uint32_t> subsets_;
};

inline DyadicPlan dyadic_plan(std::size_t l) { return DyadicPlan(l); }

struct SizeBound {
    double closed_form;   ///< 2^{4l} (1 + 1/sqrt 2)^{2l}
    double binomial_sum;  ///< sum_s C(l,s)^2 2^{-s}
    double chain;         ///< C(2l,l) 2^{2l} * binomial_sum, sits between |A| and closed_form
};

inline SizeBound size_bound(std::size_t l)
{
    if (l < 1)
        throw std::invalid_argument("size_bound: l must be positive");
    SizeBound b{};
    const double L = static_cast<double>(l);
    b.closed_form = std::pow(2.0, 4 * L) * std::pow(1.0 + 1.0 / std::sqrt(2.0), 2 * L);
    for (std::size_t s = 0; s <= l; ++s) {
        const double c = static_cast<double>(binomial_u64(l, s));
        b.binomial_sum += c * c * std::pow(2.0, -static_cast<double>(s));
    }
    b.chain = static_cast<double>(binomial_u64(2 * l, l)) * std::pow(2.0, 2 * L) * b.binomial_sum;
    return b;
}

/// c in the order exponent 1/(2-c), in closed form: log_8(1 + (5-2√2)/(3+2√2)).
inline double dyadic_exponent_constant()
{
    const double r2 = std::sqrt(2.0);
    return std::log(1.0 + (5.0 - 2.0 * r2) / (3.0 + 2.0 * r2)) / std::log(8.0);
}

/// The same constant from the growth rates: k ~ 8^l and |A| <= (16 (1+1/√2)^2)^l.
inline double dyadic_exponent_from_growth()
{
    const double base = 16.0 * std::pow(1.0 + 1.0 / std::sqrt(2.0), 2);
    return 2.0 - std::log(base) / std::log(8.0);
}

/// A = union over i <= j of u_i + w_j + Δ_ij, where Δ_ij = V_{S_i} + V_{S_{R+1-j}}
/// for i < j and Δ_ii = {v_m^{(i)} + v_n^{(R+1-i)} : m <= n}. The witness
/// has s_{a + 2^l(b-1)} = u_b + v_a^{(b)} and t_{a' + 2^l(b'-1)} = w_b' + v_a'^{(R+1-b')}.
inline ConstructedInstance<BitVector> dyadic_construction(std::size_t l)
{
    const DyadicPlan plan(l);
    const std::size_t R = plan.R();
    const std::size_t B = plan.block();
    std::vector<BitVector> a;
    a.reserve(plan.exact_size());
    for (std::size_t i = 1; i <= R; ++i) {
        for (std::size_t j = i; j <= R; ++j) {
            const BitVector shift = plan.u(i) + plan.w(j);
            if (i < j) {
                for (const auto& x : plan.span_of(plan.subset(i) | plan.subset(R + 1 - j)))
                    a.push_back(shift + x);
            } else {
                for (std::size_t m = 1; m <= B; ++m)
                    for (std::size_t n = m; n <= B; ++n)
                        a.push_back(shift + plan.v(i, m) + plan.v(R + 1 - i, n));
            }
        }
    }
    std::vector<BitVector> s, t;
    for (std::size_t b = 1; b <= R; ++b)
        for (std::size_t m = 1; m <= B; ++m) {
            s.push_back(plan.u(b) + plan.v(b, m));
            t.push_back(plan.w(b) + plan.v(R + 1 - b, m));
        }
    const auto amb = Ambient::f2(plan.dim());
    ConstructedInstance<BitVector> inst{F2Set(amb, std::move(a)), F2Witness(amb, std::move(s), std::move(t)), {}};
    const auto bound = size_bound(l);
    inst.meta = {{"l", double(l)},
                 {"R", double(R)},
                 {"k", double(plan.k())},
                 {"n", double(plan.dim())},
                 {"size", double(inst.A.size())},
                 {"size_bound", bound.closed_form},
                 {"size_chain", bound.chain}};
    return inst;
}

/// Grows A to exactly N elements. The new elements live on a fresh block of
/// coordinates, each with a nonzero pattern there, so no sum s_i + t_j (all
/// supported on the old coordinates) can hit them.
inline ConstructedInstance<BitVector> pad_to_size(const ConstructedInstance<BitVector>& inst, std::size_t N)
{
    const std::size_t have = inst.A.size();
    if (N < have)
        throw std::invalid_argument("pad_to_size: target " + std::to_string(N) + " is below |A| = " +
                                    std::to_string(have));
    if (N == have)
        return inst;
    const std::size_t extra = N - have;
    const std::size_t n0 = inst.A.ambient().n;
    const std::size_t fresh = std::bit_width(extra);
    const std::size_t n1 = n0 + fresh;
    if (n1 > BitVector::kMaxDim)
        throw std::invalid_argument("pad_to_size: padding would exceed the dimension cap");

    std::vector<BitVector> a;
    a.reserve(N);
    for (const auto& x : inst.A.elements())
        a.push_back(x.widened(n1));
    for (std::size_t code = 1; code <= extra; ++code) {
        BitVector x(n1);
        for (std::size_t b = 0; b < fresh; ++b)
            if ((code >> (fresh - 1 - b)) & 1u)
                x.set(n0 + b);
        a.push_back(x);
    }
    std::vector<BitVector> s, t;
    for (const auto& x : inst.witness.s())
        s.push_back(x.widened(n1));
    for (const auto& x : inst.witness.t())
        t.push_back(x.widened(n1));
    const auto amb = Ambient::f2(n1);
    ConstructedInstance<BitVector> out{F2Set(amb, std::move(a)), F2Witness(amb, std::move(s), std::move(t)), inst.meta};
    out.meta["size"] = double(N);
    out.meta["n"] = double(n1);
    out.meta["padded_from"] = double(have);
    return out;
}

/// A set of exactly N elements: the dyadic construction for the largest l
/// whose set fits (l <= 4), padded up to N. Needs N >= 8, the l = 1 size.
inline ConstructedInstance<BitVector> dyadic_of_size(std::size_t N)
{
    std::size_t best = 0;
    for (std::size_t l = 1; l <= DyadicPlan::kMaxL; ++l)
        if (DyadicPlan(l).exact_size() <= N)
            best = l;
    if (best == 0)
        throw std::invalid_argument("dyadic_of_size: N = " + std::to_string(N) + " is below the smallest size 8");
    return pad_to_size(dyadic_construction(best), N);
}

} // namespace stabset
