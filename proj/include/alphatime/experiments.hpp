#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "alphatime/config.hpp"

namespace alphatime {

struct ExperimentInfo {
    std::string id;
    std::string description;
    std::string anchor;  // which identity of the write-up the id verifies
};

/// The fixed catalog: one subcommand per verified identity.
const std::vector<ExperimentInfo>& experiment_catalog();

struct ExperimentResult {
    std::string id;
    bool pass = false;
    nlohmann::ordered_json report;
    std::string csv;
};

/// Runs one experiment purely in memory. Throws std::invalid_argument
/// for unknown ids or malformed configs.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Runs and writes <out_dir>/<id>_report.json and <id>_grid.csv.
/// Returns 0 iff every acceptance assertion in the config passed.
int run_and_write(const ExperimentConfig& cfg, const std::string& out_dir);

}  // namespace alphatime
