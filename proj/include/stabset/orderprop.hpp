#pragma once

// The k-order property: sequences s, t of length k with s_i + t_j in A
// exactly when i <= j.
//
// Sets and witnesses are templated on the group element: BitVector for
// F_2^n, std::int64_t for the integers. Exact search is F_2^n only.

#include "stabset/gf2.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace stabset {

enum class GroupKind { F2, Z };

struct Ambient {
    GroupKind kind = GroupKind::F2;
    std::size_t n = 0; ///< dimension for F2, unused for Z

    static Ambient f2(std::size_t n) { return {GroupKind::F2, n}; }
    static Ambient z() { return {GroupKind::Z, 0}; }

    std::string describe() const { return kind == GroupKind::Z ? "z" : "f2 n=" + std::to_string(n); }
    friend bool operator==(const Ambient&, const Ambient&) = default;
};

template <class Elem>
struct GroupTraits;

template <>
struct GroupTraits<BitVector> {
    static constexpr GroupKind kind = GroupKind::F2;
    static BitVector add(const BitVector& a, const BitVector& b) { return a + b; }
    static bool fits(const Ambient& amb, const BitVector& x) { return x.dim() == amb.n; }
    static std::string show(const BitVector& x) { return x.to_string(); }
};

template <>
struct GroupTraits<std::int64_t> {
    static constexpr GroupKind kind = GroupKind::Z;
    static std::int64_t add(std::int64_t a, std::int64_t b)
    {
        std::int64_t out;
        if (__builtin_add_overflow(a, b, &out))
            throw std::overflow_error("integer sum " + std::to_string(a) + " + " + std::to_string(b) +
                                      " overflows 64 bits");
        return out;
    }
    static bool fits(const Ambient&, std::int64_t) { return true; }
    static std::string show(std::int64_t x) { return std::to_string(x); }
};

/// A finite subset of the ambient group, kept sorted for membership tests.
template <class Elem>
class FiniteSet {
public:
    using element_type = Elem;
    using Traits = GroupTraits<Elem>;

    FiniteSet() : ambient_{Traits::kind, 0} {}

    FiniteSet(Ambient ambient, std::vector<Elem> elements) : ambient_(ambient), elements_(std::move(elements))
    {
        if (ambient_.kind != Traits::kind)
            throw std::invalid_argument("FiniteSet: ambient kind does not match element type");
        for (const auto& e : elements_)
            if (!Traits::fits(ambient_, e))
                throw std::invalid_argument("FiniteSet: element " + Traits::show(e) + " not in ambient " +
                                            ambient_.describe());
        std::sort(elements_.begin(), elements_.end());
        auto dup = std::adjacent_find(elements_.begin(), elements_.end());
        if (dup != elements_.end())
            throw std::invalid_argument("FiniteSet: duplicate element " + Traits::show(*dup));
    }

    const Ambient& ambient() const noexcept { return ambient_; }
    const std::vector<Elem>& elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }

    bool contains(const Elem& x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

    friend bool operator==(const FiniteSet&, const FiniteSet&) = default;

private:
    Ambient ambient_;
    std::vector<Elem> elements_;
};

using F2Set = FiniteSet<BitVector>;
using ZSet = FiniteSet<std::int64_t>;

inline F2Set make_f2_set(std::size_t n, std::vector<BitVector> elements)
{
    return F2Set(Ambient::f2(n), std::move(elements));
}

inline ZSet make_z_set(std::vector<std::int64_t> elements) { return ZSet(Ambient::z(), std::move(elements)); }

/// Parses bitstrings into an F2 set of the given dimension.
inline F2Set f2_set_from_strings(std::size_t n, const std::vector<std::string>& bits)
{
    std::vector<BitVector> xs;
    xs.reserve(bits.size());
    for (const auto& b : bits)
        xs.push_back(BitVector::from_string(b));
    return make_f2_set(n, std::move(xs));
}

/// Ordered pair (s, t) of equal-length sequences.
template <class Elem>
class Witness {
public:
    using element_type = Elem;
    using Traits = GroupTraits<Elem>;

    Witness() : ambient_{Traits::kind, 0} {}

    Witness(Ambient ambient, std::vector<Elem> s, std::vector<Elem> t)
        : ambient_(ambient), s_(std::move(s)), t_(std::move(t))
    {
        if (ambient_.kind != Traits::kind)
            throw std::invalid_argument("Witness: ambient kind does not match element type");
        if (s_.size() != t_.size())
            throw std::invalid_argument("Witness: s has length " + std::to_string(s_.size()) + " but t has length " +
                                        std::to_string(t_.size()));
        for (const auto* seq : {&s_, &t_})
            for (const auto& e : *seq)
                if (!Traits::fits(ambient_, e))
                    throw std::invalid_argument("Witness: element " + Traits::show(e) + " not in ambient " +
                                                ambient_.describe());
    }

    const Ambient& ambient() const noexcept { return ambient_; }
    std::size_t k() const noexcept { return s_.size(); }
    const std::vector<Elem>& s() const noexcept { return s_; }
    const std::vector<Elem>& t() const noexcept { return t_; }

    /// Cell M_ij = s_i + t_j, 0-based indices.
    Elem cell(std::size_t i, std::size_t j) const { return Traits::add(s_[i], t_[j]); }

    friend bool operator==(const Witness&, const Witness&) = default;

private:
    Ambient ambient_;
    std::vector<Elem> s_;
    std::vector<Elem> t_;
};

using F2Witness = Witness<BitVector>;
using ZWitness = Witness<std::int64_t>;

enum class ViolationKind {
    ExpectedInA,
    ExpectedNotInA,
    DuplicateS,
    DuplicateT,
    RepeatedInRow,
    RepeatedInColumn,
    StaircaseCollision,
};

inline const char* to_string(ViolationKind kind)
{
    switch (kind) {
    case ViolationKind::ExpectedInA: return "expected-in-A";
    case ViolationKind::ExpectedNotInA: return "expected-not-in-A";
    case ViolationKind::DuplicateS: return "duplicate-s";
    case ViolationKind::DuplicateT: return "duplicate-t";
    case ViolationKind::RepeatedInRow: return "repeated-in-row";
    case ViolationKind::RepeatedInColumn: return "repeated-in-column";
    case ViolationKind::StaircaseCollision: return "staircase-collision";
    }
    return "unknown";
}

/// Indices are 1-based. For duplicates, (i, j) are the two equal positions;
/// for staircase collisions (i, j) and (i2, j2) are the two equal cells.
struct Violation {
    ViolationKind kind;
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t i2 = 0;
    std::size_t j2 = 0;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct Verdict {
    bool valid = true;
    std::optional<Violation> violation;

    static Verdict ok() { return {}; }
    static Verdict fail(Violation v) { return {false, v}; }

    std::string describe() const
    {
        if (valid)
            return "valid";
        const auto& v = *violation;
        std::ostringstream os;
        os << "(" << v.i << "," << v.j << ") " << to_string(v.kind);
        if (v.kind == ViolationKind::StaircaseCollision)
            os << " with (" << v.i2 << "," << v.j2 << ")";
        return os.str();
    }
};

namespace detail {

/// First pair of equal entries as 1-based (earlier, later), ordered by the later index.
template <class Elem>
std::optional<std::pair<std::size_t, std::size_t>> first_repeat(const std::vector<Elem>& xs)
{
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t r = 1; r < order.size(); ++r) {
        if (xs[order[r]] == xs[order[r - 1]]) {
            std::pair<std::size_t, std::size_t> p{order[r - 1] + 1, order[r] + 1};
            if (!best || p.second < best->second)
                best = p;
        }
    }
    return best;
}

} // namespace detail

/// Checks that s and t witness the k-order property in A: entries of s are
/// pairwise distinct, likewise t, and s_i + t_j is in A iff i <= j. The first
/// failing cell is reported in row-major order. k = 0 is vacuously valid.
template <class Elem>
Verdict verify_witness(const FiniteSet<Elem>& A, const Witness<Elem>& w)
{
    if (!(A.ambient() == w.ambient()))
        throw std::invalid_argument("verify_witness: set ambient " + A.ambient().describe() +
                                    " differs from witness ambient " + w.ambient().describe());
    if (auto rep = detail::first_repeat(w.s()))
        return Verdict::fail({ViolationKind::DuplicateS, rep->first, rep->second});
    if (auto rep = detail::first_repeat(w.t()))
        return Verdict::fail({ViolationKind::DuplicateT, rep->first, rep->second});
    const std::size_t k = w.k();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const bool in = A.contains(w.cell(i, j));
            if (i <= j && !in)
                return Verdict::fail({ViolationKind::ExpectedInA, i + 1, j + 1});
            if (i > j && in)
                return Verdict::fail({ViolationKind::ExpectedNotInA, i + 1, j + 1});
        }
    }
    return Verdict::ok();
}

/// Recovers the unique orderings of sets S and T witnessing the order
/// property, if any. In a witness s_i has exactly k+1-i partners t_j with
/// s_i + t_j in A and t_j has exactly j partners, so sorting by degree is
/// forced; the result is then re-verified.
template <class Elem>
std::optional<Witness<Elem>> canonical_enumeration(const FiniteSet<Elem>& A, const std::vector<Elem>& S,
                                                   const std::vector<Elem>& T)
{
    if (S.size() != T.size())
        throw std::invalid_argument("canonical_enumeration: |S| = " + std::to_string(S.size()) +
                                    " but |T| = " + std::to_string(T.size()));
    using Traits = GroupTraits<Elem>;
    const std::size_t k = S.size();
    std::vector<std::pair<std::size_t, Elem>> sdeg, tdeg;
    for (const auto& s : S) {
        std::size_t d = 0;
        for (const auto& t : T)
            d += A.contains(Traits::add(s, t));
        sdeg.emplace_back(d, s);
    }
    for (const auto& t : T) {
        std::size_t d = 0;
        for (const auto& s : S)
            d += A.contains(Traits::add(s, t));
        tdeg.emplace_back(d, t);
    }
    std::sort(sdeg.begin(), sdeg.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::sort(tdeg.begin(), tdeg.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Elem> s, t;
    for (std::size_t i = 0; i < k; ++i) {
        if (sdeg[i].first != k - i || tdeg[i].first != i + 1)
            return std::nullopt;
        s.push_back(sdeg[i].second);
        t.push_back(tdeg[i].second);
    }
    Witness<Elem> w(A.ambient(), std::move(s), std::move(t));
    if (!verify_witness(A, w).valid)
        return std::nullopt;
    return w;
}

/// Staircase rigidity of M_ij = s_i + t_j: values distinct along every row
/// and column, and M_ij != M_i'j' whenever i <= j < i' <= j'.
inline Verdict staircase_check(const F2Witness& w)
{
    const std::size_t k = w.k();
    std::vector<BitVector> line(k);
    auto repeat_in = [&](auto cell_at, ViolationKind kind) -> std::optional<Violation> {
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b)
                line[b] = cell_at(a, b);
            if (auto rep = detail::first_repeat(line)) {
                if (kind == ViolationKind::RepeatedInRow)
                    return Violation{kind, a + 1, rep->first, a + 1, rep->second};
                return Violation{kind, rep->first, a + 1, rep->second, a + 1};
            }
        }
        return std::nullopt;
    };
    if (auto v = repeat_in([&](std::size_t i, std::size_t j) { return w.cell(i, j); }, ViolationKind::RepeatedInRow))
        return Verdict::fail(*v);
    if (auto v = repeat_in([&](std::size_t j, std::size_t i) { return w.cell(i, j); },
                           ViolationKind::RepeatedInColumn))
        return Verdict::fail(*v);

    // Among upper cells (i <= j) carrying one value, a collision exists iff
    // the smallest column index is below the largest row index.
    struct Extremes {
        std::size_t min_j, min_j_row, max_i, max_i_col;
    };
    std::unordered_map<BitVector, Extremes, BitVectorHash> by_value;
    by_value.reserve(k * (k + 1) / 2);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            auto [it, inserted] = by_value.try_emplace(w.cell(i, j), Extremes{j, i, i, j});
            if (inserted)
                continue;
            auto& e = it->second;
            if (j < e.min_j)
                e.min_j = j, e.min_j_row = i;
            if (i > e.max_i)
                e.max_i = i, e.max_i_col = j;
        }
    }
    std::optional<Violation> first;
    for (const auto& [value, e] : by_value) {
        if (e.min_j < e.max_i) {
            Violation v{ViolationKind::StaircaseCollision, e.min_j_row + 1, e.min_j + 1, e.max_i + 1, e.max_i_col + 1};
            if (!first || std::tie(v.i, v.j, v.i2, v.j2) < std::tie(first->i, first->j, first->i2, first->j2))
                first = v;
        }
    }
    return first ? Verdict::fail(*first) : Verdict::ok();
}

inline Verdict staircase_check(const ZWitness&)
{
    throw std::invalid_argument("staircase_check: only F2 ambient witnesses are supported");
}

/// Distinctness of the diagonal s_i + t_i.
template <class Elem>
bool diagonal_distinct(const Witness<Elem>& w)
{
    std::vector<Elem> diag;
    for (std::size_t i = 0; i < w.k(); ++i)
        diag.push_back(w.cell(i, i));
    return !detail::first_repeat(diag).has_value();
}

// ---------------------------------------------------------------------------
// Exact search in F_2^n.
//
// Confinement lemma. If (s, t) witnesses the k-order property then so does
// (s + g, t + g) for every g, since sums are unchanged in characteristic 2;
// take g = t_1 so that t_1 = 0. Then s_1 = s_1 + t_1 is in A, every t_j lies
// in s_1 + A, a subset of A + A, and every s_i lies in t_i + A, a subset of
// A + A + A. The search is therefore finite and independent of how A sits
// in the ambient space.
// ---------------------------------------------------------------------------

enum class SolveStatus { Exact, LowerBoundOnly };

inline const char* to_string(SolveStatus s) { return s == SolveStatus::Exact ? "exact" : "lower-bound-only"; }

struct SolveOptions {
    /// Wall-clock budget; the default never expires.
    std::chrono::duration<double> time_limit{std::numeric_limits<double>::infinity()};
    /// Known witness to start from; the search then only looks for longer ones.
    std::optional<F2Witness> warm_start;
};

struct SolveReport {
    std::size_t kmax = 0;
    F2Witness witness;
    std::uint64_t nodes_explored = 0;
    std::chrono::duration<double> elapsed{0};
    SolveStatus status = SolveStatus::Exact;
};

namespace detail {

class OrderSearch {
public:
    OrderSearch(const F2Set& A, const SolveOptions& opts)
        : A_(A), n_(A.ambient().n), limit_(opts.time_limit), start_(std::chrono::steady_clock::now())
    {
        best_ = F2Witness(A.ambient(), {}, {});
        if (opts.warm_start) {
            if (!verify_witness(A, *opts.warm_start).valid)
                throw std::invalid_argument("max_order_exact: warm-start witness does not verify");
            best_ = *opts.warm_start;
        }
    }

    SolveReport run()
    {
        if (best_.k() < A_.size()) {
            const BitVector zero(n_);
            t_.push_back(zero);
            for (const auto& s1 : A_.elements()) {
                if (stop_)
                    break;
                s_.push_back(s1);
                diag_.push_back(s1);
                std::vector<BitVector> cand;
                cand.reserve(A_.size());
                for (const auto& a : A_.elements())
                    cand.push_back(s1 + a);
                canonicalize(cand);
                extend(cand);
                s_.pop_back();
                diag_.pop_back();
            }
        }
        SolveReport rep;
        rep.kmax = best_.k();
        rep.witness = best_;
        rep.nodes_explored = nodes_;
        rep.elapsed = std::chrono::steady_clock::now() - start_;
        rep.status = timed_out_ ? SolveStatus::LowerBoundOnly : SolveStatus::Exact;
        return rep;
    }

private:
    bool in_A(const BitVector& x) const { return A_.contains(x); }

    void tick()
    {
        if ((++nodes_ & 0xFF) == 0 && std::chrono::steady_clock::now() - start_ > limit_) {
            timed_out_ = true;
            stop_ = true;
        }
    }

    // s_1..s_r and t_1..t_r are placed; cand = {x : s_i + x in A for all i <= r},
    // which contains t_r and no earlier t_j.
    void extend(const std::vector<BitVector>& cand)
    {
        tick();
        const std::size_t r = s_.size();
        if (r > best_.k()) {
            best_ = F2Witness(A_.ambient(), s_, t_);
            if (best_.k() == A_.size())
                stop_ = true; // no set has order above its size
        }
        if (stop_)
            return;
        // Future t's are distinct members of cand other than t_r.
        if (r + cand.size() - 1 <= best_.k())
            return;

        const BitVector& t_last = t_.back();
        std::vector<BitVector> s_cand;
        std::vector<BitVector> next;
        for (const auto& t : cand) {
            if (t == t_last)
                continue;
            s_cand.clear();
            for (const auto& a : A_.elements())
                s_cand.push_back(t + a);
            std::sort(s_cand.begin(), s_cand.end());
            t_.push_back(t);
            for (const auto& s : s_cand) {
                if (!admissible_s(s, t))
                    continue;
                next.clear();
                for (const auto& x : cand)
                    if (x != t_last && in_A(s + x))
                        next.push_back(x);
                s_.push_back(s);
                diag_.push_back(s + t);
                extend(next);
                s_.pop_back();
                diag_.pop_back();
                if (stop_)
                    break;
            }
            t_.pop_back();
            if (stop_)
                return;
        }
    }

    bool admissible_s(const BitVector& s, const BitVector& t) const
    {
        const BitVector d = s + t;
        // s + t_j must avoid A for every earlier j (t_.back() is t itself)
        for (std::size_t j = 0; j + 1 < t_.size(); ++j)
            if (in_A(s + t_[j]))
                return false;
        for (const auto& prev : s_)
            if (prev == s)
                return false;
        // a repeated diagonal value would put s_j + t_i in A for i < j
        for (const auto& prev : diag_)
            if (prev == d)
                return false;
        return true;
    }

    const F2Set& A_;
    std::size_t n_;
    std::chrono::duration<double> limit_;
    std::chrono::steady_clock::time_point start_;
    std::vector<BitVector> s_, t_, diag_;
    F2Witness best_;
    std::uint64_t nodes_ = 0;
    bool stop_ = false;
    bool timed_out_ = false;
};

} // namespace detail

/// Largest k for which A has the k-order property, by depth-first search
/// over positions r = 1..k choosing t_r and then s_r. Candidates are tried
/// in lexicographic order; the reported witness is the first maximal one
/// found. When the time limit expires the best witness so far is returned
/// with status LowerBoundOnly.
inline SolveReport max_order_exact(const F2Set& A, const SolveOptions& opts = {})
{
    return detail::OrderSearch(A, opts).run();
}

/// Exhaustive reference for max_order_exact on tiny sets (|A| <= 8, n <= 5).
/// Extends prefixes over the confined domains and re-checks each prefix
/// directly against the definition.
inline std::size_t max_order_bruteforce(const F2Set& A)
{
    if (A.size() > 8 || A.ambient().n > 5)
        throw std::invalid_argument("max_order_bruteforce: requires |A| <= 8 and n <= 5");
    const auto& elems = A.elements();
    const auto tdom = sumset(elems, elems);
    const auto sdom = sumset(tdom, elems);
    const std::size_t n = A.ambient().n;

    std::vector<BitVector> s, t;
    auto prefix_ok = [&] {
        const std::size_t k = s.size();
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                const bool in = std::find(elems.begin(), elems.end(), s[i] + t[j]) != elems.end();
                if (in != (i <= j))
                    return false;
            }
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (s[i] == s[j] || t[i] == t[j])
                    return false;
        return true;
    };
    std::size_t best = 0;
    auto rec = [&](auto&& self) -> void {
        best = std::max(best, s.size());
        const bool first = s.empty();
        const std::vector<BitVector> zero_only{BitVector(n)};
        for (const auto& tc : first ? zero_only : tdom) {
            for (const auto& sc : sdom) {
                s.push_back(sc);
                t.push_back(tc);
                if (prefix_ok())
                    self(self);
                s.pop_back();
                t.pop_back();
            }
        }
    };
    rec(rec);
    return best;
}

} // namespace stabset
