// Command-line front end: one subcommand per figure family, CSV output.
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "fchain/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Free-fermionic chains with inhomogeneous hoppings: exact, SDRG and "
                 "semiclassical density profiles, engineered potentials, entanglement"};
    app.require_subcommand(1);

    std::string config_path;
    std::string outdir = "out";
    int jobs = 1;
    bool seedless = false;
    app.add_option("--config", config_path, "experiment config file (JSON)")->required();
    app.add_option("--outdir", outdir, "output directory");
    app.add_option("--jobs", jobs, "worker pool size");
    app.add_flag("--seedless", seedless,
                 "assert determinism (there is no randomness; re-runs are byte-identical)");

    auto* density = app.add_subcommand("density", "exact/SDRG/semiclassical/fitted densities");
    auto* modes = app.add_subcommand("modes", "single-particle modes vs WKB envelopes");
    auto* strongsweep = app.add_subcommand("strongsweep", "rainbow inhomogeneity sweep");
    auto* compensate = app.add_subcommand("compensate", "compensating-potential densities");
    auto* mimic = app.add_subcommand("mimic", "mimicking-potential densities");
    auto* entropy = app.add_subcommand("entropy", "block entanglement entropy profiles");
    for (auto* sub : {density, modes, strongsweep, compensate, mimic, entropy})
        sub->fallthrough();  // global flags may follow the subcommand

    CLI11_PARSE(app, argc, argv);

    try {
        fchain::ExperimentConfig cfg = fchain::load_config(config_path);
        cfg.outdir = outdir;
        cfg.jobs = jobs;
        if (density->parsed()) fchain::cmd_density(cfg);
        if (modes->parsed()) fchain::cmd_modes(cfg);
        if (strongsweep->parsed()) fchain::cmd_strongsweep(cfg);
        if (compensate->parsed()) fchain::cmd_compensate(cfg);
        if (mimic->parsed()) fchain::cmd_mimic(cfg);
        if (entropy->parsed()) fchain::cmd_entropy(cfg);
    } catch (const fchain::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    return 0;
}
