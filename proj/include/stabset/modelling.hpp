#pragma once

// Compression of an order-property witness into a small F_2^n.
//
// A k-witness (s, t) in A is cut into S' = {s_1..s_l}, S+ = {s_l..s_{k-l}},
// T' = {t_{k-l}..t_k} and T+ = {t_l..t_{k-l}}. A homomorphism phi that is
// injective on S+ + T+ carries the middle block of the witness to a
// (k-2l+1)-witness for A' = {phi(s_i + t_j) : l <= i <= j <= k-l}; the
// target dimension is driven down by quotienting out vectors that avoid
// D = phi(S+) + phi(S+) + phi(T+) + phi(T+) until D fills the space.

#include "stabset/gf2.hpp"
#include "stabset/orderprop.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabset {

enum class LRange {
    Lemma,   ///< 1 <= l < k/4
    Relaxed, ///< 1 <= l and 2l < k, e.g. l = floor(k/4) when 4 | k
};

struct WitnessPartition {
    std::vector<BitVector> S_prime, S_plus, T_prime, T_plus;
    std::size_t l = 0;
    std::size_t k = 0;
    std::size_t A_size = 0;

    double eta() const { return static_cast<double>(l) / static_cast<double>(k); }
    double K() const { return static_cast<double>(A_size) / static_cast<double>(k); }
};

namespace detail {

inline bool subset_of(const std::vector<BitVector>& xs, const F2Set& A)
{
    return std::all_of(xs.begin(), xs.end(), [&](const BitVector& x) { return A.contains(x); });
}

inline std::vector<BitVector> slice(const std::vector<BitVector>& seq, std::size_t first, std::size_t last)
{
    // 1-based inclusive
    std::vector<BitVector> out(seq.begin() + static_cast<std::ptrdiff_t>(first - 1),
                               seq.begin() + static_cast<std::ptrdiff_t>(last));
    canonicalize(out);
    return out;
}

} // namespace detail

inline void check_l(std::size_t l, std::size_t k, LRange range)
{
    if (l < 1)
        throw std::invalid_argument("partition: l must be at least 1");
    if (range == LRange::Lemma && !(4 * l < k))
        throw std::invalid_argument("partition: need l < k/4 (l = " + std::to_string(l) +
                                    ", k = " + std::to_string(k) + ")");
    if (range == LRange::Relaxed && !(2 * l < k))
        throw std::invalid_argument("partition: need 2l < k (l = " + std::to_string(l) + ", k = " +
                                    std::to_string(k) + ")");
}

inline WitnessPartition partition_witness(const F2Set& A, const F2Witness& w, std::size_t l,
                                          LRange range = LRange::Lemma)
{
    const auto verdict = verify_witness(A, w);
    if (!verdict.valid)
        throw std::invalid_argument("partition_witness: witness does not verify: " + verdict.describe());
    const std::size_t k = w.k();
    check_l(l, k, range);
    WitnessPartition p;
    p.l = l;
    p.k = k;
    p.A_size = A.size();
    p.S_prime = detail::slice(w.s(), 1, l);
    p.S_plus = detail::slice(w.s(), l, k - l);
    p.T_prime = detail::slice(w.t(), k - l, k);
    p.T_plus = detail::slice(w.t(), l, k - l);
    for (const auto& [X, Y] : {std::pair{&p.S_prime, &p.T_plus}, std::pair{&p.S_prime, &p.T_prime},
                               std::pair{&p.S_plus, &p.T_prime}})
        if (!detail::subset_of(sumset(*X, *Y), A))
            throw std::logic_error("partition_witness: a block sumset escapes A");
    return p;
}

/// The chain |S+ + T+| <= |S+ + T'||T' + T+|/|T'|
///                     <= |S+ + T'||T' + S'||S' + T+|/(|T'||S'|)
///                     <= eta^-2 K^3 k = |A|^3 / l^2
///                     <= 2 eta^-2 K^3 min{|T+|, |S+|},
/// each step compared exactly by cross-multiplication.
struct RuzsaReport {
    std::size_t plus_plus = 0;    ///< |S+ + T+|
    std::size_t plus_tprime = 0;  ///< |S+ + T'|
    std::size_t tprime_tplus = 0; ///< |T' + T+|
    std::size_t tprime_sprime = 0;
    std::size_t sprime_tplus = 0;
    double first_bound = 0, second_bound = 0, eta_K_bound = 0, final_bound = 0;
    bool first_holds = false, second_holds = false, third_holds = false, fourth_holds = false;

    bool all_hold() const { return first_holds && second_holds && third_holds && fourth_holds; }
    double slack() const { return final_bound - static_cast<double>(plus_plus); }
};

inline RuzsaReport ruzsa_check(const WitnessPartition& p)
{
    using wide = unsigned __int128;
    RuzsaReport r;
    r.plus_plus = sumset(p.S_plus, p.T_plus).size();
    r.plus_tprime = sumset(p.S_plus, p.T_prime).size();
    r.tprime_tplus = sumset(p.T_prime, p.T_plus).size();
    r.tprime_sprime = sumset(p.T_prime, p.S_prime).size();
    r.sprime_tplus = sumset(p.S_prime, p.T_plus).size();
    const wide tp = p.T_prime.size(), sp = p.S_prime.size();
    const wide a3 = wide(p.A_size) * p.A_size * p.A_size;
    const wide l2 = wide(p.l) * p.l;
    const std::size_t m = std::min(p.T_plus.size(), p.S_plus.size());

    // first: plus_plus <= plus_tprime * tprime_tplus / tp
    r.first_holds = wide(r.plus_plus) * tp <= wide(r.plus_tprime) * r.tprime_tplus;
    // second: plus_tprime*tprime_tplus/tp <= plus_tprime*tprime_sprime*sprime_tplus/(tp*sp)
    r.second_holds = wide(r.plus_tprime) * r.tprime_tplus * tp * sp <=
                     wide(r.plus_tprime) * r.tprime_sprime * r.sprime_tplus * tp;
    // third: second bound <= |A|^3 / l^2
    r.third_holds = wide(r.plus_tprime) * r.tprime_sprime * r.sprime_tplus * l2 <= a3 * tp * sp;
    // fourth: |A|^3 / l^2 <= 2 |A|^3 m / (l^2 k)  <=>  k <= 2m
    r.fourth_holds = p.k <= 2 * m;

    r.first_bound = double(r.plus_tprime) * double(r.tprime_tplus) / double(tp);
    r.second_bound = double(r.plus_tprime) * double(r.tprime_sprime) * double(r.sprime_tplus) / (double(tp) * double(sp));
    r.eta_K_bound = std::pow(p.eta(), -2) * std::pow(p.K(), 3) * double(p.k);
    r.final_bound = 2.0 * std::pow(p.eta(), -2) * std::pow(p.K(), 3) * double(m);
    return r;
}

struct ModelStep {
    std::size_t n_before = 0;
    std::size_t D_size = 0;
    BitVector x; ///< quotiented vector, lexicographically least outside D
};

struct ModelTrace {
    std::size_t n = 0;
    LinearMap2 phi{0, 0};
    std::size_t D_size = 0;
    std::vector<ModelStep> steps;
};

namespace detail {

/// The c-th vector of F_2^n in lexicographic order (binary c on the last coordinates).
inline BitVector lex_nth(std::size_t n, std::uint64_t c)
{
    BitVector x(n);
    for (std::size_t b = 0; b < 64 && b < n; ++b)
        if ((c >> b) & 1u)
            x.set(n - 1 - b);
    return x;
}

/// Lexicographically least vector of F_2^n not in the sorted set D, if any.
inline std::optional<BitVector> least_missing(std::size_t n, const std::vector<BitVector>& D)
{
    if (n < 64 && D.size() >= (std::uint64_t{1} << n))
        return std::nullopt;
    for (std::uint64_t c = 0; c < D.size(); ++c) {
        const auto x = lex_nth(n, c);
        if (!(D[c] == x))
            return x;
    }
    return lex_nth(n, D.size());
}

inline std::vector<BitVector> doubled_sumset(const LinearMap2& phi, const std::vector<BitVector>& S,
                                             const std::vector<BitVector>& T)
{
    const auto single = sumset(image(phi, S), image(phi, T));
    return sumset(single, single);
}

} // namespace detail

/// Starts from the coordinate projection onto the pivots of span(S+ + T+),
/// which is injective on that span, then repeatedly composes with
/// quotient_map(n, x) for the least x outside D. A collision phi(a) = phi(b)
/// with a != b in S+ + T+ after quotienting would force phi(a) + phi(b) = x,
/// but phi(a) + phi(b) lies in D; injectivity is re-checked after each step.
/// Stops with 2^n = |D|.
inline ModelTrace minimal_model(const WitnessPartition& p, std::size_t ambient_n)
{
    for (const auto* set : {&p.S_plus, &p.T_plus})
        for (const auto& x : *set)
            if (x.dim() != ambient_n)
                throw std::invalid_argument("minimal_model: element outside F_2^" + std::to_string(ambient_n));
    const auto sum_plus = sumset(p.S_plus, p.T_plus);
    const auto W = Subspace2::span(ambient_n, sum_plus);

    std::vector<BitVector> rows;
    for (auto pivot : W.pivots()) {
        BitVector r(ambient_n);
        r.set(pivot);
        rows.push_back(r);
    }
    ModelTrace trace;
    trace.phi = LinearMap2(ambient_n, std::move(rows));
    trace.n = W.dim();
    auto injective = [&] { return image(trace.phi, sum_plus).size() == sum_plus.size(); };
    if (!injective())
        throw std::logic_error("minimal_model: initial projection is not injective on S+ + T+");

    while (true) {
        const auto D = detail::doubled_sumset(trace.phi, p.S_plus, p.T_plus);
        const auto x = detail::least_missing(trace.n, D);
        if (!x) {
            trace.D_size = D.size();
            break;
        }
        trace.steps.push_back({trace.n, D.size(), *x});
        trace.phi = compose(quotient_map(trace.n, *x), trace.phi);
        --trace.n;
        if (!injective())
            throw std::logic_error("minimal_model: quotient by " + x->to_string() + " broke injectivity");
    }
    return trace;
}

struct ModelResult {
    WitnessPartition partition;
    RuzsaReport ruzsa;
    ModelTrace model;
    F2Set A_prime;
    F2Witness witness_prime;
    double log2_bound = 0; ///< log2 of 16 eta^-10 K^15 k
    bool bound_ok = false;

    std::size_t n() const { return model.n; }

    std::string report() const
    {
        std::ostringstream os;
        os << "k            " << partition.k << "\n"
           << "l            " << partition.l << "\n"
           << "eta          " << partition.eta() << "\n"
           << "K            " << partition.K() << "\n"
           << "|S+ + T+|    " << ruzsa.plus_plus << " (bound " << ruzsa.final_bound << ")\n"
           << "quotients    " << model.steps.size() << "\n"
           << "n            " << model.n << "\n"
           << "|D|          " << model.D_size << "\n"
           << "|A'|         " << A_prime.size() << "\n"
           << "order        " << witness_prime.k() << "\n"
           << "log2 bound   " << log2_bound << " (slack " << log2_bound - double(model.n) << ")\n"
           << "bound ok     " << (bound_ok ? "yes" : "no") << "\n";
        return os.str();
    }
};

/// Maps the middle block of the witness through the compressing
/// homomorphism and checks the resulting (k-2l+1)-witness.
inline ModelResult compress(const F2Set& A, const F2Witness& w, std::size_t l, LRange range = LRange::Lemma)
{
    ModelResult res;
    res.partition = partition_witness(A, w, l, range);
    res.ruzsa = ruzsa_check(res.partition);
    res.model = minimal_model(res.partition, A.ambient().n);
    const auto& phi = res.model.phi;
    const std::size_t k = w.k();

    std::vector<BitVector> a;
    for (std::size_t i = l; i <= k - l; ++i)
        for (std::size_t j = i; j <= k - l; ++j)
            a.push_back(phi(w.s()[i - 1] + w.t()[j - 1]));
    canonicalize(a);
    std::vector<BitVector> s, t;
    for (std::size_t i = 1; i <= k - 2 * l + 1; ++i) {
        s.push_back(phi(w.s()[l + i - 2]));
        t.push_back(phi(w.t()[l + i - 2]));
    }
    const auto amb = Ambient::f2(res.model.n);
    res.A_prime = F2Set(amb, std::move(a));
    res.witness_prime = F2Witness(amb, std::move(s), std::move(t));
    const auto verdict = verify_witness(res.A_prime, res.witness_prime);
    if (!verdict.valid)
        throw std::logic_error("compress: compressed witness fails: " + verdict.describe());

    res.log2_bound = 4.0 + 15.0 * std::log2(double(A.size())) - 10.0 * std::log2(double(l)) - 4.0 * std::log2(double(k));
    res.bound_ok = double(res.model.n) <= res.log2_bound + 1e-9;
    return res;
}

struct PetridisResult {
    std::vector<BitVector> Z;
    std::size_t num = 0; ///< |S + Z|
    std::size_t den = 1; ///< |Z|

    double ratio() const { return double(num) / double(den); }
};

/// Nonempty Z of T minimizing |S + Z| / |Z|; ties go to the smaller |Z|,
/// then to the lexicographically smaller sorted element list.
inline PetridisResult petridis_minimizer(const std::vector<BitVector>& S, std::vector<BitVector> T)
{
    canonicalize(T);
    if (T.empty())
        throw std::invalid_argument("petridis_minimizer: T must be nonempty");
    if (T.size() > 15)
        throw std::invalid_argument("petridis_minimizer: |T| must be at most 15");
    std::optional<PetridisResult> best;
    for (std::uint32_t mask = 1; mask < (1u << T.size()); ++mask) {
        PetridisResult cand;
        for (std::size_t b = 0; b < T.size(); ++b)
            if ((mask >> b) & 1u)
                cand.Z.push_back(T[b]);
        cand.den = cand.Z.size();
        cand.num = sumset(S, cand.Z).size();
        if (!best) {
            best = cand;
            continue;
        }
        const auto lhs = cand.num * best->den, rhs = best->num * cand.den;
        if (lhs < rhs || (lhs == rhs && (cand.den < best->den || (cand.den == best->den && cand.Z < best->Z))))
            best = cand;
    }
    return *best;
}

/// |S + Z + C| <= (|S + Z| / |Z|) |Z + C|.
inline bool petridis_inequality_holds(const std::vector<BitVector>& S, const PetridisResult& z,
                                      const std::vector<BitVector>& C)
{
    const auto lhs = sumset(sumset(S, z.Z), C).size();
    const auto zc = sumset(z.Z, C).size();
    return lhs * z.den <= z.num * zc;
}

} // namespace stabset
