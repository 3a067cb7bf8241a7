/// @file blab_cli.cpp
/// Command-line front end; links only the C API of the shared library.

#include "blab/blab_c.h"

#include <CLI11.hpp>

#include <cstdio>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{std::string("boussinesq couette stability toolkit ") +
                 blab_version()};
    app.require_subcommand(1);

    std::string config_path, out_dir, lemma_id = "all", csv_path;
    long long seed = -1;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        if (needs_config)
            cmd->add_option("--config", config_path, "JSON config file")->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed, "override the config seed");
    };

    CLI::App* sim = app.add_subcommand("simulate", "run one trajectory");
    add_common(sim, true);
    CLI::App* verify = app.add_subcommand("verify", "run the inequality lab");
    add_common(verify, true);
    verify->add_option("--lemma", lemma_id, "lemma id or 'all'");
    CLI::App* scan = app.add_subcommand("scan", "parameter sweeps");
    add_common(scan, true);
    CLI::App* fit = app.add_subcommand("fit", "re-fit from an existing CSV");
    fit->add_option("--config", csv_path, "diagnostics CSV path")->required();
    fit->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    char err[512] = {};
    int rc = 0;
    if (sim->parsed())
        rc = blab_run_simulate(config_path.c_str(), out_dir.c_str(), seed, err,
                               sizeof err);
    else if (verify->parsed())
        rc = blab_run_verify(config_path.c_str(), out_dir.c_str(), lemma_id.c_str(),
                             seed, err, sizeof err);
    else if (scan->parsed())
        rc = blab_run_scan(config_path.c_str(), out_dir.c_str(), seed, err,
                           sizeof err);
    else if (fit->parsed())
        rc = blab_run_fit(csv_path.c_str(), out_dir.c_str(), err, sizeof err);

    if (rc != 0 && err[0] != '\0') std::fprintf(stderr, "error: %s\n", err);
    return rc;
}
