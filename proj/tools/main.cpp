// Command-line front-end: run scenario files, validate them, list crystal
// presets. Exit codes: 0 success, 2 parse/validation failure, 3 physics
// domain error, 4 I/O failure.
#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "spdcsim/runner.hpp"

namespace {

int run_command(const std::string& path, const spdcsim::RunOptions& options) {
    try {
        const spdcsim::Scenario scenario =
            spdcsim::load_scenario_file(path);
        const spdcsim::RunReport report =
            spdcsim::run_scenario(scenario, options);
        for (const std::string& w : report.warnings)
            std::fprintf(stderr, "warning: %s\n", w.c_str());
        std::printf("wrote %s (%zu outputs)\n",
                    report.manifest_path.string().c_str(),
                    report.outputs.size());
        return 0;
    } catch (const spdcsim::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 2;
    } catch (const spdcsim::DomainError& e) {
        // what() already starts with the originating module's name
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 3;
    } catch (const spdcsim::IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 4;
    }
}

int validate_command(const std::string& path) {
    try {
        const auto diagnostics = spdcsim::validate_scenario_file(path);
        if (diagnostics.empty()) {
            std::printf("ok\n");
            return 0;
        }
        for (const std::string& d : diagnostics)
            std::fprintf(stderr, "%s\n", d.c_str());
        return 2;
    } catch (const spdcsim::IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 4;
    }
}

int presets_list_command() {
    for (const spdcsim::CrystalPreset& p : spdcsim::crystal_presets()) {
        std::printf("%s: %s (length %g mm, poling period %.4g um, sign %+d, "
                    "%s profile)\n",
                    p.name.c_str(), p.description.c_str(),
                    p.crystal.length() * 1e3, p.crystal.poling_period() * 1e6,
                    p.crystal.poling_sign(),
                    p.crystal.shape() == spdcsim::PmfShape::sinc ? "sinc"
                                                                 : "gaussian");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint-spectral simulation of pulsed photon-pair sources: "
                 "heralded purity, seeded-conversion statistics and "
                 "two-photon interference"};
    app.require_subcommand(1);

    std::string scenario_path;
    spdcsim::RunOptions options;

    CLI::App* run = app.add_subcommand("run", "execute a scenario file");
    run->add_option("scenario", scenario_path, "scenario file")->required();
    run->add_option("--out-dir", options.out_dir, "output directory")
        ->default_str(".");
    run->add_option("--grid-points", options.grid_points_override,
                    "override the scenario's grid resolution")
        ->check(CLI::Range(16, 4096));
    run->add_flag("--seed-metadata", options.seed_metadata,
                  "echo informational pump pulse metadata into the manifest");
    run->add_option("--workers", options.workers,
                    "threads for grid fill and sweeps (results are identical "
                    "for any count)")
        ->check(CLI::Range(1, 64));

    CLI::App* validate =
        app.add_subcommand("validate", "check a scenario file without running");
    validate->add_option("scenario", scenario_path, "scenario file")
        ->required();

    CLI::App* presets = app.add_subcommand("presets", "preset registry");
    CLI::App* presets_list =
        presets->add_subcommand("list", "list crystal presets");
    presets->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return run_command(scenario_path, options);
    if (validate->parsed()) return validate_command(scenario_path);
    if (presets_list->parsed()) return presets_list_command();
    return 0;
}
