#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cli.hpp"

using namespace semicircle;

int main(int argc, char** argv)
{
    CLI::App app{"semicircle: free Fock space evolutions, characteristic functions and identity checks"};
    app.require_subcommand(1);

    cli::run_config cfg;
    std::string generator = "P", format = "csv", table = "catalan", output;

    const std::map<std::string, cli::output_format> formats{{"csv", cli::output_format::csv},
                                                            {"json", cli::output_format::json}};
    const std::map<std::string, cli::table_kind> tables{{"catalan", cli::table_kind::catalan},
                                                        {"hilbert", cli::table_kind::hilbert}};

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output", output, "write the artifact to this file instead of stdout");
        sub->add_option("--tol", cfg.tol, "tolerance (default 1e-8)");
        sub->add_option("--seed", cfg.seed, "RNG seed (default 0)");
    };
    auto with_t = [&](CLI::App* sub) {
        sub->add_option("--t", cfg.t_values, "time(s); repeat or separate with commas")->delimiter(',');
        sub->add_option("--generator", generator, "P, X, P2 or H1")->check(CLI::IsMember({"P", "X", "P2", "H1"}));
    };

    auto* coeffs = app.add_subcommand("coeffs", "coefficient table I_{m,n}(t), closed form checked against series");
    with_t(coeffs);
    coeffs->add_option("--m-max", cfg.m_max, "largest m (default 4)");
    coeffs->add_option("--n-max", cfg.n_max, "largest n (default 4)");

    auto* evolve = app.add_subcommand("evolve", "amplitudes <Phi_l, e^{itG} Phi_k>");
    with_t(evolve);
    evolve->add_option("--k", cfg.k, "initial basis index (default 0)");
    evolve->add_option("--l-max", cfg.l_max, "largest output index (default 40)");
    evolve->add_option("--omega", cfg.omega, "frequency for H1 (default 1)");

    auto* chr = app.add_subcommand("char", "characteristic function <Phi_k, e^{itG} Phi_k>");
    with_t(chr);
    chr->add_option("--k", cfg.k, "basis index (default 0)");
    chr->add_option("--omega", cfg.omega, "frequency for H1 (default 1)");
    chr->add_option("--p-xi", cfg.p_xi, "Bernoulli parameter for H1 (default 1)");

    auto* heis = app.add_subcommand("heisenberg", "matrix of e^{itG} a^+ e^{-itG}, G = P or P2");
    with_t(heis);
    heis->add_option("--m-max", cfg.m_max, "largest row index (default 4)");
    heis->add_option("--n-max", cfg.n_max, "largest column index (default 4)");
    heis->add_option("--omega", cfg.omega, "frequency (default 1)");

    auto* verify = app.add_subcommand("verify", "run every identity check; exit 1 on failure");

    auto* tab = app.add_subcommand("table", "Catalan moment table or Hilbert transform table");
    tab->add_option("--table", table, "catalan or hilbert")->check(CLI::IsMember({"catalan", "hilbert"}));
    tab->add_option("--n-max", cfg.n_max, "largest index (default 4)");

    for (auto* sub : {coeffs, evolve, chr, heis, verify, tab})
        common(sub);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return cli::exit_config;
    }

    if (*coeffs)
        cfg.cmd = cli::command::coeffs;
    else if (*evolve)
        cfg.cmd = cli::command::evolve;
    else if (*chr)
        cfg.cmd = cli::command::char_fn;
    else if (*heis)
        cfg.cmd = cli::command::heisenberg;
    else if (*verify)
        cfg.cmd = cli::command::verify;
    else
        cfg.cmd = cli::command::table;
    cfg.generator = *cli::parse_generator(generator);
    cfg.format = formats.at(format);
    cfg.table = tables.at(table);

    if (output.empty())
        return cli::run(cfg, std::cout);
    std::ofstream f(output);
    if (!f)
    {
        std::cerr << "config error: cannot open " << output << '\n';
        return cli::exit_config;
    }
    return cli::run(cfg, f);
}
