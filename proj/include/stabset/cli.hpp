#pragma once

// Command implementations behind the stabset executable. Each returns the
// process exit code: 0 valid/success, 1 invalid witness, 2 usage or parse
// error.

#include "stabset/clp.hpp"
#include "stabset/cnf.hpp"
#include "stabset/constructions.hpp"
#include "stabset/io.hpp"
#include "stabset/modelling.hpp"
#include "stabset/orderprop.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace stabset::cli {

inline constexpr int kOk = 0;
inline constexpr int kInvalid = 1;
inline constexpr int kUsage = 2;

namespace detail {

template <class F>
int guarded(std::ostream& err, F&& body)
{
    try {
        return body();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return kUsage;
}

inline F2Set require_f2_set(const AnySet& s, const char* what)
{
    if (!std::holds_alternative<F2Set>(s))
        throw std::invalid_argument(std::string(what) + " requires an f2 set; integer sets support verification only");
    return std::get<F2Set>(s);
}

inline F2Witness require_f2_witness(const AnyWitness& w, const char* what)
{
    if (!std::holds_alternative<F2Witness>(w))
        throw std::invalid_argument(std::string(what) + " requires an f2 witness");
    return std::get<F2Witness>(w);
}

} // namespace detail

inline int cmd_verify(const std::string& set_path, const std::string& witness_path, std::ostream& out,
                      std::ostream& err)
{
    return detail::guarded(err, [&] {
        const auto set = load_set(set_path);
        const auto wit = load_witness(witness_path);
        if (set.index() != wit.index())
            throw std::invalid_argument("set and witness live in different groups");
        const auto verdict = std::visit(
            [&](const auto& A) -> Verdict {
                using SetT = std::decay_t<decltype(A)>;
                using WitT = Witness<typename SetT::element_type>;
                return verify_witness(A, std::get<WitT>(wit));
            },
            set);
        const std::size_t k = std::visit([](const auto& w) { return w.k(); }, wit);
        if (verdict.valid) {
            out << "valid k=" << k << "\n";
            return kOk;
        }
        out << "invalid " << verdict.describe() << "\n";
        return kInvalid;
    });
}

struct MaxOrderArgs {
    std::string set_path;
    double time_limit = std::numeric_limits<double>::infinity(); ///< seconds
    std::string witness_out;                                     ///< default: <set_path>.max.wit
    std::string cnf_out;                                         ///< empty: no DIMACS dump
    std::optional<std::size_t> cnf_k;                            ///< default: kmax + 1
};

inline int cmd_max_order(const MaxOrderArgs& args, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        const auto A = detail::require_f2_set(load_set(args.set_path), "max-order");
        SolveOptions opts;
        opts.time_limit = std::chrono::duration<double>(args.time_limit);
        const auto rep = max_order_exact(A, opts);
        const auto wit_path = args.witness_out.empty() ? args.set_path + ".max.wit" : args.witness_out;
        write_text_file(wit_path, serialize_witness(rep.witness));
        out << "N=" << A.size() << "\n"
            << "kmax=" << rep.kmax << "\n"
            << "status=" << to_string(rep.status) << "\n"
            << "nodes=" << rep.nodes_explored << "\n"
            << "elapsed=" << std::fixed << std::setprecision(6) << rep.elapsed.count() << "\n"
            << "witness=" << wit_path << "\n";
        if (!args.cnf_out.empty()) {
            const std::size_t k = args.cnf_k.value_or(rep.kmax + 1);
            write_text_file(args.cnf_out, export_cnf(A, k));
            out << "cnf=" << args.cnf_out << " (k=" << k << ")\n";
        }
        return kOk;
    });
}

struct ConstructArgs {
    std::string kind; ///< "ap" or "dyadic"
    std::int64_t start = 0;
    std::int64_t diff = 1;
    std::int64_t length = 1;
    std::size_t l = 1;
    std::optional<std::size_t> pad_to;
    std::string out_prefix; ///< writes <prefix>.set and <prefix>.wit; default: kind
};

inline int cmd_construct(const ConstructArgs& args, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        const std::string prefix = args.out_prefix.empty() ? args.kind : args.out_prefix;
        std::string set_text, wit_text;
        if (args.kind == "ap") {
            if (args.pad_to)
                throw std::invalid_argument("--pad-to applies to dyadic constructions only");
            const auto inst = ap_witness(args.start, args.diff, args.length);
            set_text = serialize_set(inst.A);
            wit_text = serialize_witness(inst.witness);
            out << "|A|=" << inst.A.size() << "\nk=" << inst.witness.k() << "\n";
        } else if (args.kind == "dyadic") {
            auto inst = dyadic_construction(args.l);
            if (args.pad_to)
                inst = pad_to_size(inst, *args.pad_to);
            set_text = serialize_set(inst.A);
            wit_text = serialize_witness(inst.witness);
            const auto bound = size_bound(args.l);
            out << "|A|=" << inst.A.size() << "\nk=" << inst.witness.k() << "\nn=" << inst.A.ambient().n << "\n"
                << "size_bound=" << std::fixed << std::setprecision(3) << bound.closed_form << "\n"
                << "size_chain=" << bound.chain << "\n";
        } else {
            throw std::invalid_argument("unknown construction '" + args.kind + "' (expected ap or dyadic)");
        }
        write_text_file(prefix + ".set", set_text);
        write_text_file(prefix + ".wit", wit_text);
        out << "wrote " << prefix << ".set " << prefix << ".wit\n";
        return kOk;
    });
}

struct CompressArgs {
    std::string set_path;
    std::string witness_path;
    std::size_t l = 1;
    bool relaxed = false;
    std::string out_prefix; ///< default: <set_path>.compressed
};

inline int cmd_compress(const CompressArgs& args, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        const auto A = detail::require_f2_set(load_set(args.set_path), "compress");
        const auto w = detail::require_f2_witness(load_witness(args.witness_path), "compress");
        const auto res = compress(A, w, args.l, args.relaxed ? LRange::Relaxed : LRange::Lemma);
        const std::string prefix = args.out_prefix.empty() ? args.set_path + ".compressed" : args.out_prefix;
        write_text_file(prefix + ".set", serialize_set(res.A_prime));
        write_text_file(prefix + ".wit", serialize_witness(res.witness_prime));
        out << res.report() << "wrote " << prefix << ".set " << prefix << ".wit\n";
        return kOk;
    });
}

/// Accepts "r/n" or a decimal.
inline double parse_probability(const std::string& text)
{
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return std::stod(text);
        const double num = std::stod(text.substr(0, slash));
        const double den = std::stod(text.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        return num / den;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("cannot parse p = '" + text + "'");
    }
}

struct ClpArgs {
    std::string set_path;
    std::string witness_path;
    std::string p;
    std::string format = "csv"; ///< csv or text
    bool relaxed = false;
};

inline int cmd_clp(const ClpArgs& args, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        const double p = parse_probability(args.p);
        if (!(p > 0.5 && p <= 1.0))
            throw std::invalid_argument("p must lie in (1/2, 1]");
        const auto A = detail::require_f2_set(load_set(args.set_path), "clp");
        const auto w = detail::require_f2_witness(load_witness(args.witness_path), "clp");
        const auto cert = rank_certificate(A, w, p, {args.relaxed});
        if (args.format == "text")
            out << cert.text();
        else if (args.format == "csv")
            out << RankCertificate::csv_header() << "\n" << cert.csv_row() << "\n";
        else
            throw std::invalid_argument("unknown format '" + args.format + "'");
        return kOk;
    });
}

struct ExperimentArgs {
    std::string generator; ///< random | density | subspace | dyadic | ap
    std::size_t n = 4;
    std::size_t N_min = 1, N_max = 0;
    std::size_t dim_min = 0, dim_max = 0; ///< subspace dimensions
    std::size_t l_min = 1, l_max = 0;     ///< dyadic parameters
    std::size_t seeds = 1;
    std::uint64_t seed = 1;
    double density = 0.5;
    double time_limit = 10.0; ///< seconds per instance
};

struct ExperimentRow {
    std::string id;
    std::size_t N = 0;
    std::size_t n = 0;
    std::size_t kmax = 0;
    SolveStatus status = SolveStatus::Exact;
    double runtime = 0;
};

inline std::string csv_header() { return "instance-id,N,n,kmax,status,runtime"; }

inline std::string csv_row(const ExperimentRow& r)
{
    std::ostringstream os;
    os << r.id << "," << r.N << "," << r.n << "," << r.kmax << "," << to_string(r.status) << "," << std::fixed
       << std::setprecision(6) << r.runtime;
    return os.str();
}

namespace detail {

inline std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
{
    std::seed_seq seq{seed, a, b};
    return std::mt19937_64(seq);
}

inline F2Set random_subset(std::size_t n, std::size_t N, std::mt19937_64& rng)
{
    if (n > 20)
        throw std::invalid_argument("random generator: n must be at most 20");
    if (N > (std::size_t{1} << n))
        throw std::invalid_argument("random generator: N exceeds 2^n");
    std::vector<std::uint64_t> codes(std::size_t{1} << n);
    std::iota(codes.begin(), codes.end(), 0);
    std::shuffle(codes.begin(), codes.end(), rng);
    std::vector<BitVector> xs;
    for (std::size_t i = 0; i < N; ++i)
        xs.push_back(BitVector::from_index(n, codes[i]));
    return make_f2_set(n, std::move(xs));
}

inline F2Set random_subspace(std::size_t n, std::size_t dim, std::mt19937_64& rng)
{
    if (dim > n || n > 20)
        throw std::invalid_argument("subspace generator: need dim <= n <= 20");
    std::vector<BitVector> gens;
    while (Subspace2::span(n, gens).dim() < dim) {
        gens.push_back(BitVector::from_index(n, rng() & ((std::uint64_t{1} << n) - 1)));
        gens = Subspace2::span(n, gens).basis();
    }
    return make_f2_set(n, Subspace2::span(n, gens).elements());
}

} // namespace detail

/// Deterministic given the arguments, apart from the runtime column.
inline std::vector<ExperimentRow> run_experiment(const ExperimentArgs& args)
{
    std::vector<ExperimentRow> rows;
    SolveOptions base;
    base.time_limit = std::chrono::duration<double>(args.time_limit);
    auto solve = [&](std::string id, const F2Set& A, SolveOptions opts) {
        const auto rep = max_order_exact(A, opts);
        rows.push_back({std::move(id), A.size(), A.ambient().n, rep.kmax, rep.status, rep.elapsed.count()});
    };
    const auto& g = args.generator;
    if (g == "random") {
        for (std::size_t N = args.N_min; N <= args.N_max; ++N)
            for (std::size_t s = 0; s < args.seeds; ++s) {
                auto rng = detail::instance_rng(args.seed, N, s);
                solve("random-n" + std::to_string(args.n) + "-N" + std::to_string(N) + "-s" + std::to_string(s),
                      detail::random_subset(args.n, N, rng), base);
            }
    } else if (g == "density") {
        if (args.n > 20 || !(args.density >= 0.0 && args.density <= 1.0))
            throw std::invalid_argument("density generator: need n <= 20 and density in [0, 1]");
        for (std::size_t s = 0; s < args.seeds; ++s) {
            auto rng = detail::instance_rng(args.seed, args.n, s);
            std::bernoulli_distribution coin(args.density);
            std::vector<BitVector> xs;
            for (std::uint64_t c = 0; c < (std::uint64_t{1} << args.n); ++c)
                if (coin(rng))
                    xs.push_back(BitVector::from_index(args.n, c));
            solve("density-n" + std::to_string(args.n) + "-s" + std::to_string(s), make_f2_set(args.n, std::move(xs)),
                  base);
        }
    } else if (g == "subspace") {
        for (std::size_t dim = args.dim_min; dim <= args.dim_max; ++dim)
            for (std::size_t s = 0; s < args.seeds; ++s) {
                auto rng = detail::instance_rng(args.seed, dim, s);
                solve("subspace-n" + std::to_string(args.n) + "-d" + std::to_string(dim) + "-s" + std::to_string(s),
                      detail::random_subspace(args.n, dim, rng), base);
            }
    } else if (g == "dyadic") {
        for (std::size_t l = args.l_min; l <= args.l_max; ++l) {
            const auto inst = dyadic_construction(l);
            auto opts = base;
            opts.warm_start = inst.witness;
            solve("dyadic-l" + std::to_string(l), inst.A, opts);
        }
    } else if (g == "ap") {
        // {0, 1, ..., N-1} written in binary inside F_2^n
        for (std::size_t N = args.N_min; N <= args.N_max; ++N) {
            const std::size_t n = std::max<std::size_t>(args.n, std::bit_width(N - 1));
            if (n > 64)
                throw std::invalid_argument("ap generator: n too large");
            std::vector<BitVector> xs;
            for (std::uint64_t i = 0; i < N; ++i)
                xs.push_back(BitVector::from_index(n, i));
            solve("ap-n" + std::to_string(n) + "-N" + std::to_string(N), make_f2_set(n, std::move(xs)), base);
        }
    } else {
        throw std::invalid_argument("unknown generator '" + g + "' (expected random, density, subspace, dyadic or ap)");
    }
    return rows;
}

inline int cmd_experiment(const ExperimentArgs& args, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        const auto rows = run_experiment(args);
        out << csv_header() << "\n";
        for (const auto& r : rows)
            out << csv_row(r) << "\n";
        return kOk;
    });
}

} // namespace stabset::cli
