#pragma once

// DIMACS encoding of "A has the k-order property" over F_2^n.
//
// One-hot selection variables pick each s_i from S = A+A+A and each t_j
// from T = A+A, with t_1 pinned to 0 (see the confinement lemma in
// orderprop.hpp). Variable numbering, 1-based:
//
//   var(s_i = S[a]) = (i-1)|S| + a + 1                 i = 1..k
//   var(t_1 = 0)    = k|S| + 1
//   var(t_j = T[b]) = k|S| + 1 + (j-2)|T| + b + 1      j = 2..k
//
// for k|S| + 1 + (k-1)|T| variables in total. The domains are listed in the
// header comments so that a model decodes back to a witness.

#include "stabset/orderprop.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace stabset {

struct CnfLayout {
    std::size_t k = 0;
    std::size_t n = 0;
    std::vector<BitVector> s_domain;
    std::vector<BitVector> t_domain;

    std::size_t s_var(std::size_t i, std::size_t a) const { return i * s_domain.size() + a + 1; }
    std::size_t t1_var() const { return k * s_domain.size() + 1; }
    /// j is 0-based and must be >= 1.
    std::size_t t_var(std::size_t j, std::size_t b) const
    {
        return k * s_domain.size() + 1 + (j - 1) * t_domain.size() + b + 1;
    }
    std::size_t num_vars() const
    {
        if (k == 0)
            return 0;
        return k * s_domain.size() + 1 + (k - 1) * t_domain.size();
    }
};

struct Cnf {
    CnfLayout layout;
    std::size_t num_vars = 0;
    std::vector<std::vector<int>> clauses;
    bool trivially_unsat = false;

    std::string to_dimacs() const
    {
        std::ostringstream os;
        os << "c stabset order-property cnf v1\n";
        os << "c k=" << layout.k << " n=" << layout.n << "\n";
        os << "c |S|=" << layout.s_domain.size() << " |T|=" << layout.t_domain.size() << "\n";
        os << "c variables = k*|S| + 1 + (k-1)*|T| = " << layout.num_vars() << "\n";
        os << "c var(s_i=S[a]) = (i-1)*|S| + a + 1\n";
        os << "c var(t_1=0) = k*|S| + 1\n";
        os << "c var(t_j=T[b]) = k*|S| + 1 + (j-2)*|T| + b + 1\n";
        for (std::size_t a = 0; a < layout.s_domain.size(); ++a)
            os << "c S " << a << " " << layout.s_domain[a].to_string() << "\n";
        for (std::size_t b = 0; b < layout.t_domain.size(); ++b)
            os << "c T " << b << " " << layout.t_domain[b].to_string() << "\n";
        if (trivially_unsat)
            os << "c empty candidate domain: unsatisfiable\n";
        os << "p cnf " << num_vars << " " << clauses.size() << "\n";
        for (const auto& c : clauses) {
            for (int lit : c)
                os << lit << " ";
            os << "0\n";
        }
        return os.str();
    }
};

inline Cnf build_cnf(const F2Set& A, std::size_t k)
{
    if (k == 0)
        throw std::invalid_argument("export_cnf: k must be at least 1");
    Cnf cnf;
    auto& L = cnf.layout;
    L.k = k;
    L.n = A.ambient().n;
    L.t_domain = sumset(A.elements(), A.elements());
    L.s_domain = sumset(L.t_domain, A.elements());
    if (L.s_domain.empty() || (k > 1 && L.t_domain.empty())) {
        cnf.trivially_unsat = true;
        cnf.clauses.push_back({});
        return cnf;
    }
    cnf.num_vars = L.num_vars();
    const std::size_t S = L.s_domain.size();
    const std::size_t T = L.t_domain.size();
    const BitVector zero(L.n);
    auto lit = [](std::size_t v) { return static_cast<int>(v); };

    auto exactly_one = [&](const std::vector<std::size_t>& vars) {
        std::vector<int> alo;
        for (auto v : vars)
            alo.push_back(lit(v));
        cnf.clauses.push_back(alo);
        for (std::size_t a = 0; a < vars.size(); ++a)
            for (std::size_t b = a + 1; b < vars.size(); ++b)
                cnf.clauses.push_back({-lit(vars[a]), -lit(vars[b])});
    };
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::size_t> vars;
        for (std::size_t a = 0; a < S; ++a)
            vars.push_back(L.s_var(i, a));
        exactly_one(vars);
    }
    cnf.clauses.push_back({lit(L.t1_var())});
    for (std::size_t j = 1; j < k; ++j) {
        std::vector<std::size_t> vars;
        for (std::size_t b = 0; b < T; ++b)
            vars.push_back(L.t_var(j, b));
        exactly_one(vars);
    }

    // (value of t_j, its variable) pairs per position
    auto t_choices = [&](std::size_t j) {
        std::vector<std::pair<BitVector, std::size_t>> out;
        if (j == 0)
            out.emplace_back(zero, L.t1_var());
        else
            for (std::size_t b = 0; b < T; ++b)
                out.emplace_back(L.t_domain[b], L.t_var(j, b));
        return out;
    };

    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (const auto& [tv, tvar] : t_choices(j))
                for (std::size_t a = 0; a < S; ++a)
                    if (A.contains(L.s_domain[a] + tv) != (i <= j))
                        cnf.clauses.push_back({-lit(L.s_var(i, a)), -lit(tvar)});

    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t i2 = i + 1; i2 < k; ++i2)
            for (std::size_t a = 0; a < S; ++a)
                cnf.clauses.push_back({-lit(L.s_var(i, a)), -lit(L.s_var(i2, a))});
    for (std::size_t j = 1; j < k; ++j)
        for (std::size_t j2 = j + 1; j2 < k; ++j2)
            for (std::size_t b = 0; b < T; ++b)
                cnf.clauses.push_back({-lit(L.t_var(j, b)), -lit(L.t_var(j2, b))});
    // t_j != t_1 = 0 for j >= 2
    for (std::size_t j = 1; j < k; ++j)
        for (std::size_t b = 0; b < T; ++b)
            if (L.t_domain[b] == zero)
                cnf.clauses.push_back({-lit(L.t_var(j, b))});
    return cnf;
}

/// DIMACS text whose models are exactly the normalized k-witnesses in A.
inline std::string export_cnf(const F2Set& A, std::size_t k) { return build_cnf(A, k).to_dimacs(); }

/// Reads a witness off a model; model[v] is the value of variable v (index 0 unused).
inline F2Witness decode_model(const CnfLayout& L, const std::vector<bool>& model)
{
    std::vector<BitVector> s, t;
    for (std::size_t i = 0; i < L.k; ++i) {
        for (std::size_t a = 0; a < L.s_domain.size(); ++a)
            if (model.at(L.s_var(i, a))) {
                s.push_back(L.s_domain[a]);
                break;
            }
    }
    t.push_back(BitVector(L.n));
    for (std::size_t j = 1; j < L.k; ++j) {
        for (std::size_t b = 0; b < L.t_domain.size(); ++b)
            if (model.at(L.t_var(j, b))) {
                t.push_back(L.t_domain[b]);
                break;
            }
    }
    if (s.size() != L.k || t.size() != L.k)
        throw std::invalid_argument("decode_model: assignment does not select every position");
    return F2Witness(Ambient::f2(L.n), std::move(s), std::move(t));
}

} // namespace stabset
