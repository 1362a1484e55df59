// stabset: order-property witnesses over F_2^n from the command line.

#include "stabset/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace cli = stabset::cli;

int main(int argc, char** argv)
{
    CLI::App app{"Order-property witnesses, constructions and certificates over F_2^n"};
    app.require_subcommand(1);

    std::string set_path, wit_path;

    auto* verify = app.add_subcommand("verify", "check a witness against a set");
    verify->add_option("set", set_path, "set file")->required();
    verify->add_option("witness", wit_path, "witness file")->required();

    cli::MaxOrderArgs mo;
    std::size_t cnf_k = 0;
    auto* max_order = app.add_subcommand("max-order", "exact maximum order of an f2 set");
    max_order->add_option("set", mo.set_path, "set file")->required();
    max_order->add_option("--time-limit", mo.time_limit, "seconds before falling back to the best order found");
    max_order->add_option("--witness-out", mo.witness_out, "witness path (default <set>.max.wit)");
    max_order->add_option("--cnf-out", mo.cnf_out, "also write the DIMACS encoding for order --cnf-k");
    auto* cnf_k_opt = max_order->add_option("--cnf-k", cnf_k, "order encoded in the CNF (default kmax+1)");

    cli::ConstructArgs ca;
    std::size_t pad_to = 0;
    auto* construct = app.add_subcommand("construct", "write a construction as set and witness files");
    construct->add_option("kind", ca.kind, "ap or dyadic")->required()->check(CLI::IsMember({"ap", "dyadic"}));
    construct->add_option("--start", ca.start, "ap: first term");
    construct->add_option("--diff", ca.diff, "ap: common difference");
    construct->add_option("--length", ca.length, "ap: number of terms");
    construct->add_option("--l", ca.l, "dyadic: parameter l (1..4)");
    auto* pad_opt = construct->add_option("--pad-to", pad_to, "dyadic: pad the set to this size");
    construct->add_option("--out-prefix", ca.out_prefix, "output prefix (default: kind)");

    cli::CompressArgs co;
    auto* compress = app.add_subcommand("compress", "model a witness inside a small F_2^n");
    compress->add_option("set", co.set_path, "set file")->required();
    compress->add_option("witness", co.witness_path, "witness file")->required();
    compress->add_option("--l", co.l, "trimming parameter; needs 4l < k unless --relaxed")->required();
    compress->add_flag("--relaxed", co.relaxed, "accept any l with 2l < k");
    compress->add_option("--out-prefix", co.out_prefix, "output prefix (default <set>.compressed)");

    cli::ClpArgs cl;
    auto* clp = app.add_subcommand("clp", "rank certificate for a witness");
    clp->add_option("set", cl.set_path, "set file")->required();
    clp->add_option("witness", cl.witness_path, "witness file")->required();
    clp->add_option("--p", cl.p, "threshold in (1/2,1], as r/n or a decimal")->required();
    clp->add_option("--format", cl.format, "csv or text")->check(CLI::IsMember({"csv", "text"}));
    clp->add_flag("--relaxed", cl.relaxed, "round np up instead of requiring an odd integer");

    cli::ExperimentArgs ex;
    auto* experiment = app.add_subcommand("experiment", "sweep a generator and print kmax as CSV");
    experiment->add_option("generator", ex.generator, "random, density, subspace, dyadic or ap")->required();
    experiment->add_option("--n", ex.n, "ambient dimension");
    experiment->add_option("--N-min", ex.N_min, "smallest set size");
    experiment->add_option("--N-max", ex.N_max, "largest set size");
    experiment->add_option("--dim-min", ex.dim_min, "subspace: smallest dimension");
    experiment->add_option("--dim-max", ex.dim_max, "subspace: largest dimension");
    experiment->add_option("--l-min", ex.l_min, "dyadic: smallest l");
    experiment->add_option("--l-max", ex.l_max, "dyadic: largest l");
    experiment->add_option("--seeds", ex.seeds, "instances per parameter value");
    experiment->add_option("--seed", ex.seed, "base seed");
    experiment->add_option("--density", ex.density, "density: membership probability");
    experiment->add_option("--time-limit", ex.time_limit, "seconds per instance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::kUsage;
    }

    if (verify->parsed())
        return cli::cmd_verify(set_path, wit_path, std::cout, std::cerr);
    if (max_order->parsed()) {
        if (cnf_k_opt->count())
            mo.cnf_k = cnf_k;
        return cli::cmd_max_order(mo, std::cout, std::cerr);
    }
    if (construct->parsed()) {
        if (pad_opt->count())
            ca.pad_to = pad_to;
        return cli::cmd_construct(ca, std::cout, std::cerr);
    }
    if (compress->parsed())
        return cli::cmd_compress(co, std::cout, std::cerr);
    if (clp->parsed())
        return cli::cmd_clp(cl, std::cout, std::cerr);
    return cli::cmd_experiment(ex, std::cout, std::cerr);
}
