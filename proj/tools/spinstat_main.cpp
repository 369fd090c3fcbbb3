#include <string>

#include <CLI11.hpp>

#include "spinstat/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"spinstat: Fermi-Dirac spin-1/2 local-equilibrium currents, polarization, and "
                 "thermodynamic identity checks"};
    app.require_subcommand(1);

    spinstat::cli::Options opt;

    auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* c = cmd->add_option("--config", opt.config_path, "path to the run config");
        if (config_required) c->required();
        cmd->add_option("--out", opt.out_path, "output path (default: [output] path or stdout)");
        cmd->add_option("--format", opt.format, "output format: json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--threads", opt.threads, "worker threads (capped by SPINSTAT_THREADS)")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* currents = app.add_subcommand("currents", "compute all currents for one state");
    add_common(currents, true);
    currents->add_flag("--particles-only", opt.particles_only,
                       "average the polarization over particles only");

    CLI::App* verify = app.add_subcommand("verify", "run the thermodynamic identity checks");
    add_common(verify, true);
    verify->add_option("--check", opt.checks,
                       "identities to check (default: all): gibbs_duhem first_law euler "
                       "generating_function boltzmann_limit");

    CLI::App* scan = app.add_subcommand("scan", "sweep one parameter, CSV row per grid point");
    add_common(scan, true);

    CLI::App* oracle = app.add_subcommand("oracle", "randomized spinor-algebra cross-checks");
    add_common(oracle, false);
    oracle->add_option("--seed", opt.seed, "random seed (default 12345)");
    oracle->add_option("--trials", opt.trials, "number of random states (default 500)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    if (currents->parsed()) return spinstat::cli::cmd_currents(opt);
    if (verify->parsed()) return spinstat::cli::cmd_verify(opt);
    if (scan->parsed()) return spinstat::cli::cmd_scan(opt);
    return spinstat::cli::cmd_oracle(opt);
}
