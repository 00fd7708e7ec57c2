#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "alphatime/config.hpp"
#include "alphatime/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "alphatime: numerical laboratory for stable-clock processes and "
        "their PDE identities"};
    app.require_subcommand(1);

    CLI::App* list = app.add_subcommand("list", "print the experiment catalog");

    CLI::App* run = app.add_subcommand("run", "run one experiment");
    std::string experiment;
    std::string config_path;
    std::string out_dir;
    std::int64_t seed = -1;
    int workers = -1;
    run->add_option("--experiment", experiment, "experiment id (see `list`)");
    run->add_option("--config", config_path, "key = value config file");
    run->add_option("--seed", seed, "seed override");
    run->add_option("--workers", workers,
                    "worker thread count (1 = serial reference)");
    run->add_option("--out", out_dir,
                    "output directory (default $ALPHATIME_OUT or .)");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        for (const auto& e : alphatime::experiment_catalog())
            std::cout << e.id << "\t" << e.anchor << "\t" << e.description
                      << "\n";
        return 0;
    }

    try {
        alphatime::ExperimentConfig cfg;
        if (!config_path.empty())
            cfg = alphatime::ExperimentConfig::from_file(config_path);
        if (!experiment.empty()) cfg.set("experiment", experiment);
        if (seed >= 0) cfg.set("seed", std::to_string(seed));
        if (workers >= 0) cfg.set("workers", std::to_string(workers));
        if (out_dir.empty()) {
            const char* env = std::getenv("ALPHATIME_OUT");
            out_dir = env ? env : ".";
        }
        const int status = alphatime::run_and_write(cfg, out_dir);
        std::cout << (status == 0 ? "PASS" : "FAIL") << " "
                  << cfg.get_string("experiment", "?") << " -> " << out_dir
                  << "\n";
        return status;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
