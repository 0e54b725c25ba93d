#include "spdcsim/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <optional>

#include "spdcsim/hom.hpp"
#include "spdcsim/photstat.hpp"
#include "spdcsim/schmidt.hpp"
#include "spdcsim/sha256.hpp"
#include "spdcsim/textio.hpp"

namespace spdcsim {

namespace {

std::string fmt_short(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct ResolvedCrystal {
    QpmCrystal crystal;
    double signal_center_wavelength;
    double idler_center_wavelength;
};

ResolvedCrystal resolve_crystal(const CrystalBlock& block) {
    if (block.preset) {
        const CrystalPreset& p = find_crystal_preset(*block.preset);
        QpmCrystal crystal = p.crystal;
        if (block.pmf && *block.pmf != crystal.shape())
            crystal = QpmCrystal(crystal.dispersion(), crystal.length(),
                                 crystal.poling_period(), crystal.poling_sign(),
                                 *block.pmf);
        return {std::move(crystal), p.signal_center_wavelength,
                p.idler_center_wavelength};
    }

    const double lambda_s = *block.signal_center_nm * 1e-9;
    const double lambda_i = *block.idler_center_nm * 1e-9;
    const double w_s = wavelength_to_omega(lambda_s).value();
    const double w_i = wavelength_to_omega(lambda_i).value();
    const double w_p = w_s + w_i;
    const double window = frequency_width_to_angular(block.window_thz * 1e12);

    const auto branch = [&](const std::array<double, 3>& k, double ref,
                            double halfwin) {
        return TaylorBranch{k[0], k[1], k[2], ref, ref - halfwin, ref + halfwin};
    };
    DispersionModel model = DispersionModel::taylor(
        "inline", branch(*block.taylor_pump, w_p, 2.0 * window),
        branch(*block.taylor_signal, w_s, window),
        branch(*block.taylor_idler, w_i, window));

    double period;
    int sign;
    if (*block.poling == "solve") {
        const PolingSolution sol = solve_poling_period(model, w_s, w_i);
        period = sol.period;
        sign = sol.sign;
    } else {
        const double v = std::strtod(block.poling->c_str(), nullptr) * 1e-6;
        period = std::abs(v);
        sign = v > 0.0 ? 1 : -1;
    }
    return {QpmCrystal(std::move(model), *block.length_mm * 1e-3, period, sign,
                       block.pmf.value_or(PmfShape::sinc)),
            lambda_s, lambda_i};
}

FilterSpec to_filter_spec(const FilterBlock& block) {
    FilterSpec f;
    f.arm = block.arm;
    f.profile = block.profile;
    if (block.center_nm) f.center_wavelength = *block.center_nm * 1e-9;
    if (block.width_nm) {
        f.width = *block.width_nm * 1e-9;
        f.unit = WidthUnit::wavelength_m;
    } else if (block.width_ghz) {
        f.width = *block.width_ghz * 1e9;
        f.unit = WidthUnit::frequency_hz;
    }
    return f;
}

} // namespace

RunReport run_scenario(const Scenario& sc, const RunOptions& opt) {
    RunReport report;
    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" +
                      opt.out_dir.string() + "': " + ec.message());

    const int workers = std::max(1, opt.workers);
    const int grid_points =
        opt.grid_points_override > 0 ? opt.grid_points_override : sc.grid.points;
    const bool width_sweep =
        sc.sweep && (sc.sweep->variable == "filter_width_nm" ||
                     sc.sweep->variable == "filter_width_ghz");

    std::vector<std::pair<std::string, std::string>> hashes; // name, sha256
    const auto emit = [&](const std::string& name, const std::string& bytes) {
        write_text_file(opt.out_dir / name, bytes);
        hashes.emplace_back(name, sha256_hex(bytes));
        report.outputs.push_back(name);
    };

    // The joint amplitude (with all fixed-width filters applied) is shared
    // by purity_sweep and jsa_dump and built at most once.
    std::optional<JsaGrid> grid;
    const auto ensure_grid = [&]() -> const JsaGrid& {
        if (!grid) {
            const ResolvedCrystal rc = resolve_crystal(sc.crystal);
            const auto [axis_s, axis_i] = default_axes(
                sc.pump, rc.crystal, rc.signal_center_wavelength,
                rc.idler_center_wavelength, grid_points, sc.grid.span_fwhm);
            grid = build_jsa(sc.pump, rc.crystal, axis_s, axis_i, workers,
                             &report.warnings);
            for (std::size_t k = 0; k < sc.filters.size(); ++k) {
                if (k == 0 && width_sweep) continue; // width comes from sweep
                grid = apply_filter(*grid, to_filter_spec(sc.filters[k]),
                                    &report.warnings);
            }
        }
        return *grid;
    };

    // hom_dip / arm_statistics run once per pair-emission probability.
    const bool prob_sweep =
        sc.sweep && sc.sweep->variable == "pair_probability";
    const std::vector<double> pair_probabilities =
        prob_sweep ? sc.sweep->values
                   : std::vector<double>{sc.statistics.pair_probability
                                             ? *sc.statistics.pair_probability
                                             : 0.0};
    const auto suffix = [&](double p) {
        return prob_sweep ? "_" + fmt_short(p) : std::string();
    };

    for (OutputKind kind : sc.outputs) {
        switch (kind) {
        case OutputKind::purity_sweep: {
            std::vector<double> widths = sc.sweep->values;
            const bool in_nm = sc.sweep->variable == "filter_width_nm";
            FilterSpec tmpl = to_filter_spec(sc.filters.front());
            tmpl.unit =
                in_nm ? WidthUnit::wavelength_m : WidthUnit::frequency_hz;
            for (double& w : widths) w *= in_nm ? 1e-9 : 1e9;
            const auto points =
                purity_vs_filter_sweep(ensure_grid(), tmpl, widths, workers);
            std::string csv =
                "width_nm,width_ghz,purity,schmidt_K,heralding_efficiency\n";
            for (const FilterSweepPoint& p : points) {
                csv += format_sig17(p.width_nm) + ',' +
                       format_sig17(p.width_ghz) + ',' +
                       format_sig17(p.purity) + ',' +
                       format_sig17(p.schmidt_number) + ',' +
                       format_sig17(p.heralding_efficiency) + '\n';
            }
            emit("purity_sweep.csv", csv);
            break;
        }
        case OutputKind::dfg_g2_curve: {
            DfgSeedModel model;
            model.schmidt_number = *sc.statistics.schmidt_number;
            const auto table = dfg_g2_curve(model, sc.sweep->values);
            std::string csv = "n_seed,g2\n";
            for (const auto& [n, g2] : table)
                csv += format_sig17(n) + ',' + format_sig17(g2) + '\n';
            emit("dfg_g2_curve.csv", csv);
            break;
        }
        case OutputKind::hom_dip: {
            for (double p1 : pair_probabilities) {
                const ArmStatistics coherent_arm =
                    ArmStatistics::coherent(*sc.statistics.alpha2);
                const ArmStatistics heralded_arm =
                    ArmStatistics::heralded_single_photon(
                        p1, *sc.statistics.transmission);
                const double bandwidth_hz =
                    sc.hom.bandwidth_ghz ? *sc.hom.bandwidth_ghz * 1e9
                                         : sc.pump.intensity_fwhm_hz;
                // Identical profiles on a shared axis in the down-converted
                // band (twice the pump wavelength); the dip shape depends
                // only on the width.
                const double fwhm = frequency_width_to_angular(bandwidth_hz);
                const SpectralAxis axis(
                    wavelength_to_omega(2.0 * sc.pump.center_wavelength),
                    10.0 * fwhm, 257);
                const SpectralProfile profile =
                    gaussian_profile(axis, AngularFrequency(axis.center()),
                                     fwhm, &report.warnings)
                        .normalized();

                HomScenario hs{coherent_arm, heralded_arm,
                               sc.statistics.indistinguishability, profile,
                               profile};
                std::vector<double> delays_s(sc.hom.delays_ps.size());
                for (std::size_t k = 0; k < delays_s.size(); ++k)
                    delays_s[k] = sc.hom.delays_ps[k] * 1e-12;
                const HomResult dip = dip_profile(hs, delays_s);

                std::string csv = "delay_ps,coincidence_normalized\n";
                for (std::size_t k = 0; k < dip.dip.size(); ++k)
                    csv += format_sig17(sc.hom.delays_ps[k]) + ',' +
                           format_sig17(dip.dip[k].second) + '\n';
                emit("hom_dip" + suffix(p1) + ".csv", csv);

                const FockOracleResult oracle = fock_oracle(
                    coherent_arm.truncated(2), heralded_arm,
                    sc.statistics.indistinguishability);
                nlohmann::ordered_json summary;
                summary["v_max_eq7"] = dip.v_max;
                summary["suppressed_fraction"] = dip.suppressed_fraction;
                summary["oracle_visibility"] = oracle.visibility;
                summary["baseline"] = dip.baseline;
                summary["pair_probability"] = p1;
                summary["alpha2"] = *sc.statistics.alpha2;
                summary["transmission"] = *sc.statistics.transmission;
                summary["indistinguishability"] =
                    sc.statistics.indistinguishability;
                summary["bandwidth_ghz"] = bandwidth_hz / 1e9;
                summary["assumes_low_heralding_detection_efficiency"] = true;
                emit("hom_summary" + suffix(p1) + ".json",
                     summary.dump(2) + "\n");
            }
            break;
        }
        case OutputKind::arm_statistics: {
            for (double p1 : pair_probabilities) {
                const ArmStatistics coherent_arm =
                    ArmStatistics::coherent(*sc.statistics.alpha2);
                const ArmStatistics heralded_arm =
                    ArmStatistics::heralded_single_photon(
                        p1, *sc.statistics.transmission);
                std::string csv = "n,probability,arm_label\n";
                for (const ArmStatistics* arm :
                     {&coherent_arm, &heralded_arm}) {
                    for (int n = 0; n <= arm->n_max(); ++n)
                        csv += std::to_string(n) + ',' +
                               format_sig17(arm->p(n)) + ',' +
                               to_string(arm->label()) + '\n';
                }
                emit("arm_statistics" + suffix(p1) + ".csv", csv);
            }
            break;
        }
        case OutputKind::jsa_dump: {
            const JsaGrid& g = ensure_grid();
            write_jsa_csv(g, opt.out_dir / "jsa.csv");
            hashes.emplace_back(
                "jsa.csv", sha256_hex(read_text_file(opt.out_dir / "jsa.csv")));
            report.outputs.push_back("jsa.csv");
            write_jsa_binary(g, opt.out_dir / "jsa.bin");
            hashes.emplace_back(
                "jsa.bin", sha256_hex(read_text_file(opt.out_dir / "jsa.bin")));
            report.outputs.push_back("jsa.bin");
            break;
        }
        }
    }

    nlohmann::ordered_json manifest;
    manifest["scenario_name"] = sc.name;
    manifest["outputs"] = nlohmann::ordered_json::array();
    for (const auto& [name, sha] : hashes)
        manifest["outputs"].push_back({{"path", name}, {"sha256", sha}});
    nlohmann::ordered_json echo;
    for (const auto& [key, value] : sc.raw_entries) echo[key] = value;
    if (opt.grid_points_override > 0)
        echo["cli.grid_points_override"] =
            std::to_string(opt.grid_points_override);
    if (opt.seed_metadata) {
        echo["pump.pulse_duration_s"] = format_sig17(sc.pump.pulse_duration_s);
        echo["pump.repetition_rate_hz"] =
            format_sig17(sc.pump.repetition_rate_hz);
    }
    manifest["parameters_echo"] = std::move(echo);

    report.manifest_path = opt.out_dir / "manifest.json";
    write_text_file(report.manifest_path, manifest.dump(2) + "\n");
    return report;
}

} // namespace spdcsim
