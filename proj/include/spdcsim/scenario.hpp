#ifndef SPDCSIM_SCENARIO_HPP
#define SPDCSIM_SCENARIO_HPP

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spdcsim/jsa.hpp"

namespace spdcsim {

// Scenario files are flat `key = value` lines with dotted keys, `#`
// comments, and whitespace-separated numeric lists. Parsing is strict:
// unknown or duplicate keys, missing required keys and out-of-range values
// are all diagnostics. The grammar is documented in the README.

enum class OutputKind {
    purity_sweep,
    dfg_g2_curve,
    hom_dip,
    jsa_dump,
    arm_statistics,
};

struct CrystalBlock {
    std::optional<std::string> preset;
    // Inline model (required as a whole when no preset is given).
    std::optional<double> length_mm;
    std::optional<double> signal_center_nm;
    std::optional<double> idler_center_nm;
    std::optional<std::array<double, 3>> taylor_pump;   // k0, k1, k2
    std::optional<std::array<double, 3>> taylor_signal;
    std::optional<std::array<double, 3>> taylor_idler;
    // "solve", or a period in um whose sign selects the poling sign.
    std::optional<std::string> poling;
    double window_thz = 10.0; // validity half-window around each carrier
    std::optional<PmfShape> pmf; // overrides the preset's shape when given

    bool has_inline_keys() const {
        return length_mm || signal_center_nm || idler_center_nm ||
               taylor_pump || taylor_signal || taylor_idler || poling;
    }
    bool declared() const { return preset.has_value() || has_inline_keys(); }
};

struct FilterBlock {
    Arm arm = Arm::idler;
    ProfileShape profile = ProfileShape::rect;
    std::optional<double> center_nm;
    std::optional<double> width_nm;  // exclusive with width_ghz
    std::optional<double> width_ghz;

    bool has_width() const { return width_nm || width_ghz; }
};

struct StatisticsBlock {
    std::optional<double> alpha2;           // coherent-arm mean photon number
    std::optional<double> pair_probability; // heralded-arm pair emission
    std::optional<double> transmission;
    double indistinguishability = 1.0;
    std::optional<double> n_seed;
    std::optional<double> schmidt_number;
};

struct HomBlock {
    std::optional<double> bandwidth_ghz; // defaults to the pump bandwidth
    std::vector<double> delays_ps;
};

struct GridBlock {
    int points = 512;
    double span_fwhm = 5.0;
};

struct SweepDef {
    std::string variable; // filter_width_nm | filter_width_ghz | n_seed |
                          // pair_probability
    std::vector<double> values;
};

struct Scenario {
    std::string name;
    PumpSpec pump;
    CrystalBlock crystal;
    GridBlock grid;
    std::vector<FilterBlock> filters;
    StatisticsBlock statistics;
    HomBlock hom;
    std::optional<SweepDef> sweep;
    std::vector<OutputKind> outputs;
    // Raw key/value pairs in file order, echoed into run manifests.
    std::vector<std::pair<std::string, std::string>> raw_entries;
};

struct ParsedScenario {
    std::optional<Scenario> scenario; // engaged iff diagnostics is empty
    std::vector<std::string> diagnostics;
};

ParsedScenario parse_scenario_text(const std::string& text);

// Throws ParseError carrying the first diagnostic when the file is invalid,
// IoError when unreadable.
Scenario load_scenario_file(const std::filesystem::path& path);

// Full strict validation without execution; empty result means runnable.
std::vector<std::string>
validate_scenario_file(const std::filesystem::path& path);

} // namespace spdcsim

#endif
