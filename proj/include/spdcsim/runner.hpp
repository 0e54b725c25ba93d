#ifndef SPDCSIM_RUNNER_HPP
#define SPDCSIM_RUNNER_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "spdcsim/scenario.hpp"

namespace spdcsim {

struct RunOptions {
    std::filesystem::path out_dir = ".";
    int grid_points_override = 0; // 0 = use the scenario's grid.points
    bool seed_metadata = false;   // echo informational pump metadata
    int workers = 1;
};

struct RunReport {
    std::filesystem::path manifest_path;
    std::vector<std::string> outputs; // file names relative to out_dir
    Warnings warnings;
};

// Execute every requested output of the scenario, write deterministic CSV /
// JSON / binary files into out_dir, and finish with manifest.json listing
// each output with its SHA-256. The manifest is written last so partial
// runs are detectable. Throws DomainError / IoError; scenario files are
// assumed already parsed.
RunReport run_scenario(const Scenario& scenario, const RunOptions& options);

} // namespace spdcsim

#endif
