#include "spdcsim/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>

#include "spdcsim/textio.hpp"

namespace spdcsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::optional<double> to_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty() || !std::isfinite(v)) return {};
    return v;
}

std::optional<long> to_int(const std::string& s) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size() || s.empty()) return {};
    return v;
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!(std::islower(static_cast<unsigned char>(c)) ||
              std::isdigit(static_cast<unsigned char>(c)) || c == '_' ||
              c == '.'))
            return false;
    return true;
}

struct Entry {
    int line = 0;
    std::string value;
    bool used = false;
};

// The whole schema walk shares this little state bundle.
struct Parse {
    std::map<std::string, Entry> entries;
    std::vector<std::string>* diags;

    void diag(int line, const std::string& message) {
        diags->push_back("line " + std::to_string(line) + ": " + message);
    }
    void diag(const std::string& message) { diags->push_back(message); }

    Entry* take(const std::string& key) {
        auto it = entries.find(key);
        if (it == entries.end()) return nullptr;
        it->second.used = true;
        return &it->second;
    }

    template <typename Ok>
    std::optional<double> number(const std::string& key, Ok&& ok,
                                 const char* constraint) {
        Entry* e = take(key);
        if (!e) return {};
        const auto v = to_double(e->value);
        if (!v) {
            diag(e->line, "'" + key + "' is not a number: '" + e->value + "'");
            return {};
        }
        if (!ok(*v)) {
            diag(e->line, "'" + key + "' must be " + constraint + ", got " +
                              e->value);
            return {};
        }
        return v;
    }

    std::optional<double> positive(const std::string& key) {
        return number(key, [](double v) { return v > 0.0; }, "> 0");
    }

    std::optional<std::string> word(const std::string& key,
                                    std::initializer_list<const char*> allowed) {
        Entry* e = take(key);
        if (!e) return {};
        for (const char* w : allowed)
            if (e->value == w) return e->value;
        std::string list;
        for (const char* w : allowed) {
            if (!list.empty()) list += ", ";
            list += w;
        }
        diag(e->line, "'" + key + "' must be one of {" + list + "}, got '" +
                          e->value + "'");
        return {};
    }

    // Plain list of numbers, or via a companion "<key>_linspace"-style range.
    std::optional<std::vector<double>> number_list(const std::string& key) {
        Entry* e = take(key);
        if (!e) return {};
        std::vector<double> values;
        for (const std::string& tok : split_ws(e->value)) {
            const auto v = to_double(tok);
            if (!v) {
                diag(e->line, "'" + key + "' contains a non-number: '" + tok + "'");
                return {};
            }
            values.push_back(*v);
        }
        return values;
    }

    std::optional<std::vector<double>> linspace(const std::string& key) {
        Entry* e = take(key);
        if (!e) return {};
        const auto toks = split_ws(e->value);
        std::optional<double> a, b;
        std::optional<long> n;
        if (toks.size() == 3) {
            a = to_double(toks[0]);
            b = to_double(toks[1]);
            n = to_int(toks[2]);
        }
        if (!a || !b || !n || *n < 2) {
            diag(e->line, "'" + key + "' must be 'start stop count' with "
                          "count >= 2, got '" + e->value + "'");
            return {};
        }
        std::vector<double> values(static_cast<std::size_t>(*n));
        for (long i = 0; i < *n; ++i)
            values[static_cast<std::size_t>(i)] =
                *a + (*b - *a) * static_cast<double>(i) /
                         static_cast<double>(*n - 1);
        return values;
    }
};

bool parse_filter_block(Parse& p, const std::string& prefix, FilterBlock& f) {
    bool any = false;
    if (const auto arm = p.word(prefix + "arm", {"signal", "idler"})) {
        f.arm = *arm == "signal" ? Arm::signal : Arm::idler;
        any = true;
    }
    if (const auto prof = p.word(prefix + "profile", {"rect", "gaussian"})) {
        f.profile = *prof == "rect" ? ProfileShape::rect : ProfileShape::gaussian;
        any = true;
    }
    if (const auto c = p.positive(prefix + "center_nm")) {
        f.center_nm = c;
        any = true;
    }
    if (const auto w = p.positive(prefix + "width_nm")) {
        f.width_nm = w;
        any = true;
    }
    if (const auto w = p.positive(prefix + "width_ghz")) {
        f.width_ghz = w;
        any = true;
    }
    if (f.width_nm && f.width_ghz)
        p.diag("filter block '" + prefix +
               "': give width_nm or width_ghz, not both");
    // Also count takes that produced diagnostics as "present".
    return any || p.entries.count(prefix + "arm") ||
           p.entries.count(prefix + "profile") ||
           p.entries.count(prefix + "center_nm") ||
           p.entries.count(prefix + "width_nm") ||
           p.entries.count(prefix + "width_ghz");
}

} // namespace

ParsedScenario parse_scenario_text(const std::string& text) {
    ParsedScenario out;
    Parse p;
    p.diags = &out.diagnostics;

    Scenario sc;

    // --- line pass -------------------------------------------------------
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(
            pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++lineno;

        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            p.diag(lineno, "expected 'key = value', got '" + line + "'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key)) {
            p.diag(lineno, "malformed key '" + key + "'");
            continue;
        }
        if (value.empty()) {
            p.diag(lineno, "empty value for '" + key + "'");
            continue;
        }
        const auto [it, inserted] = p.entries.insert({key, Entry{lineno, value}});
        if (!inserted) {
            p.diag(lineno, "duplicate key '" + key + "' (first on line " +
                               std::to_string(it->second.line) + ")");
            continue;
        }
        sc.raw_entries.emplace_back(key, value);
    }

    // --- schema ----------------------------------------------------------
    if (Entry* e = p.take("name")) {
        sc.name = e->value;
        for (char c : sc.name)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
                  c == '-')) {
                p.diag(e->line, "'name' may only contain [A-Za-z0-9_-]");
                break;
            }
    } else {
        p.diag("missing required key 'name'");
    }

    if (Entry* e = p.take("output")) {
        for (const std::string& tok : split_ws(e->value)) {
            OutputKind kind;
            if (tok == "purity_sweep") kind = OutputKind::purity_sweep;
            else if (tok == "dfg_g2_curve") kind = OutputKind::dfg_g2_curve;
            else if (tok == "hom_dip") kind = OutputKind::hom_dip;
            else if (tok == "jsa_dump") kind = OutputKind::jsa_dump;
            else if (tok == "arm_statistics") kind = OutputKind::arm_statistics;
            else {
                p.diag(e->line,
                       "unknown output '" + tok +
                           "'; expected purity_sweep, dfg_g2_curve, hom_dip, "
                           "jsa_dump or arm_statistics");
                continue;
            }
            for (OutputKind seen : sc.outputs)
                if (seen == kind)
                    p.diag(e->line, "output '" + tok + "' listed twice");
            sc.outputs.push_back(kind);
        }
    } else {
        p.diag("missing required key 'output'");
    }

    if (const auto v = p.positive("pump.center_nm"))
        sc.pump.center_wavelength = *v * 1e-9;
    if (const auto v = p.positive("pump.fwhm_ghz"))
        sc.pump.intensity_fwhm_hz = *v * 1e9;
    if (const auto v = p.word("pump.shape", {"gaussian", "rect"}))
        sc.pump.shape = *v == "gaussian" ? ProfileShape::gaussian
                                         : ProfileShape::rect;
    if (const auto v = p.positive("pump.pulse_duration_ps"))
        sc.pump.pulse_duration_s = *v * 1e-12;
    if (const auto v = p.positive("pump.repetition_rate_mhz"))
        sc.pump.repetition_rate_hz = *v * 1e6;

    if (Entry* e = p.take("crystal.preset")) {
        sc.crystal.preset = e->value;
        bool known = false;
        for (const CrystalPreset& cp : crystal_presets())
            if (cp.name == e->value) known = true;
        if (!known) {
            std::string names;
            for (const CrystalPreset& cp : crystal_presets()) {
                if (!names.empty()) names += ", ";
                names += cp.name;
            }
            p.diag(e->line, "unknown crystal preset '" + e->value +
                                "'; available: " + names);
        }
    }
    sc.crystal.length_mm = p.positive("crystal.length_mm");
    sc.crystal.signal_center_nm = p.positive("crystal.signal_center_nm");
    sc.crystal.idler_center_nm = p.positive("crystal.idler_center_nm");
    for (auto [key, slot] :
         {std::pair{"crystal.taylor.pump", &sc.crystal.taylor_pump},
          std::pair{"crystal.taylor.signal", &sc.crystal.taylor_signal},
          std::pair{"crystal.taylor.idler", &sc.crystal.taylor_idler}}) {
        if (const auto v = p.number_list(key)) {
            if (v->size() != 3)
                p.diag(p.entries.at(key).line,
                       std::string("'") + key + "' needs exactly k0 k1 k2");
            else
                *slot = std::array<double, 3>{(*v)[0], (*v)[1], (*v)[2]};
        }
    }
    if (Entry* e = p.take("crystal.poling_period_um")) {
        if (e->value != "solve") {
            const auto v = to_double(e->value);
            if (!v || *v == 0.0) {
                p.diag(e->line, "'crystal.poling_period_um' must be 'solve' or "
                                "a non-zero period (sign = poling sign)");
            }
        }
        sc.crystal.poling = e->value;
    }
    if (const auto v = p.positive("crystal.window_thz"))
        sc.crystal.window_thz = *v;
    if (const auto v = p.word("crystal.pmf", {"sinc", "gaussian"}))
        sc.crystal.pmf = *v == "sinc" ? PmfShape::sinc : PmfShape::gaussian;

    if (const auto v = p.number(
            "grid.points", [](double x) { return x >= 16 && x <= 4096 && x == std::floor(x); },
            "an integer in [16, 4096]"))
        sc.grid.points = static_cast<int>(*v);
    if (const auto v = p.positive("grid.span_fwhm")) sc.grid.span_fwhm = *v;

    // Filters: plain `filter.*` block or indexed `filter.1.*`, `filter.2.*`.
    {
        bool indexed = false;
        for (const auto& [key, e] : p.entries)
            if (key.rfind("filter.", 0) == 0 && key.size() > 7 &&
                std::isdigit(static_cast<unsigned char>(key[7])))
                indexed = true;
        bool plain = false;
        for (const auto& [key, e] : p.entries)
            if (key.rfind("filter.", 0) == 0 && key.size() > 7 &&
                !std::isdigit(static_cast<unsigned char>(key[7])))
                plain = true;
        if (indexed && plain)
            p.diag("mixing 'filter.<key>' and 'filter.<index>.<key>' forms is "
                   "not allowed");
        if (plain && !indexed) {
            FilterBlock f;
            if (parse_filter_block(p, "filter.", f)) sc.filters.push_back(f);
        } else if (indexed) {
            bool gap = false;
            for (int k = 1; k <= 8; ++k) {
                FilterBlock f;
                const std::string prefix =
                    "filter." + std::to_string(k) + ".";
                if (parse_filter_block(p, prefix, f)) {
                    if (gap)
                        p.diag("filter indices must be contiguous from 1");
                    sc.filters.push_back(f);
                } else {
                    gap = true;
                }
            }
        }
    }

    sc.statistics.alpha2 =
        p.number("statistics.alpha2", [](double v) { return v >= 0.0; }, ">= 0");
    sc.statistics.pair_probability = p.number(
        "statistics.pair_probability",
        [](double v) { return v >= 0.0 && v < 1.0; }, "in [0, 1)");
    sc.statistics.transmission = p.number(
        "statistics.transmission", [](double v) { return v > 0.0 && v <= 1.0; },
        "in (0, 1]");
    if (const auto v = p.number(
            "statistics.indistinguishability",
            [](double x) { return x >= 0.0 && x <= 1.0; }, "in [0, 1]"))
        sc.statistics.indistinguishability = *v;
    sc.statistics.n_seed = p.number(
        "statistics.n_seed", [](double v) { return v >= 0.0; }, ">= 0");
    sc.statistics.schmidt_number = p.number(
        "statistics.schmidt_number", [](double v) { return v >= 1.0; }, ">= 1");

    sc.hom.bandwidth_ghz = p.positive("hom.bandwidth_ghz");
    {
        const auto plain = p.number_list("hom.delay_ps");
        const auto lin = p.linspace("hom.delay_linspace_ps");
        if (plain && lin)
            p.diag("give 'hom.delay_ps' or 'hom.delay_linspace_ps', not both");
        if (plain) sc.hom.delays_ps = *plain;
        if (lin) sc.hom.delays_ps = *lin;
    }

    {
        const auto variable =
            p.word("sweep.variable", {"filter_width_nm", "filter_width_ghz",
                                      "n_seed", "pair_probability"});
        const auto values = p.number_list("sweep.values");
        const auto lin = p.linspace("sweep.linspace");
        if (values && lin)
            p.diag("give 'sweep.values' or 'sweep.linspace', not both");
        if ((values || lin) && !variable)
            p.diag("sweep values given without 'sweep.variable'");
        if (variable) {
            SweepDef def;
            def.variable = *variable;
            if (values) def.values = *values;
            if (lin) def.values = *lin;
            if (def.values.empty()) {
                p.diag("'sweep.variable' given without 'sweep.values' or "
                       "'sweep.linspace'");
            } else {
                for (double v : def.values) {
                    const bool ok =
                        def.variable == "n_seed"
                            ? v >= 0.0
                            : def.variable == "pair_probability"
                                  ? (v >= 0.0 && v < 1.0)
                                  : v > 0.0;
                    if (!ok) {
                        p.diag("sweep value " + std::to_string(v) +
                               " out of range for variable '" + def.variable +
                               "'");
                        break;
                    }
                }
                sc.sweep = std::move(def);
            }
        }
    }

    // --- cross-field validation -----------------------------------------
    const auto wants = [&sc](OutputKind k) {
        for (OutputKind o : sc.outputs)
            if (o == k) return true;
        return false;
    };
    const bool width_sweep =
        sc.sweep && (sc.sweep->variable == "filter_width_nm" ||
                     sc.sweep->variable == "filter_width_ghz");

    if (sc.crystal.preset && sc.crystal.has_inline_keys())
        p.diag("give 'crystal.preset' or an inline crystal model, not both");
    if (!sc.crystal.preset && sc.crystal.has_inline_keys()) {
        const bool complete = sc.crystal.length_mm &&
                              sc.crystal.signal_center_nm &&
                              sc.crystal.idler_center_nm &&
                              sc.crystal.taylor_pump &&
                              sc.crystal.taylor_signal &&
                              sc.crystal.taylor_idler && sc.crystal.poling;
        if (!complete)
            p.diag("inline crystal model needs crystal.length_mm, "
                   "crystal.signal_center_nm, crystal.idler_center_nm, "
                   "crystal.taylor.{pump,signal,idler} and "
                   "crystal.poling_period_um");
    }

    if ((wants(OutputKind::purity_sweep) || wants(OutputKind::jsa_dump)) &&
        !sc.crystal.declared())
        p.diag("outputs purity_sweep/jsa_dump need a crystal "
               "(crystal.preset or inline model)");

    if (wants(OutputKind::purity_sweep)) {
        if (!width_sweep)
            p.diag("purity_sweep needs sweep.variable = filter_width_nm or "
                   "filter_width_ghz");
        if (sc.filters.empty())
            p.diag("purity_sweep needs a filter block");
    }
    if (width_sweep && !sc.filters.empty() && sc.filters.front().has_width())
        p.diag("the swept filter's width comes from the sweep; remove its "
               "width_nm/width_ghz key");
    if (width_sweep && !wants(OutputKind::purity_sweep))
        p.diag("a filter-width sweep is only used by purity_sweep");
    // Every filter except a swept first block must carry a width.
    for (std::size_t k = 0; k < sc.filters.size(); ++k) {
        if (k == 0 && width_sweep) continue;
        if (!sc.filters[k].has_width())
            p.diag("filter block " + std::to_string(k + 1) +
                   " needs width_nm or width_ghz");
    }

    if (wants(OutputKind::dfg_g2_curve)) {
        if (!sc.sweep || sc.sweep->variable != "n_seed")
            p.diag("dfg_g2_curve needs sweep.variable = n_seed");
        if (!sc.statistics.schmidt_number)
            p.diag("dfg_g2_curve needs statistics.schmidt_number");
    }
    if (sc.sweep && sc.sweep->variable == "n_seed") {
        if (!wants(OutputKind::dfg_g2_curve))
            p.diag("an n_seed sweep is only used by dfg_g2_curve");
        if (sc.statistics.n_seed)
            p.diag("statistics.n_seed conflicts with an n_seed sweep");
    }

    const bool prob_sweep =
        sc.sweep && sc.sweep->variable == "pair_probability";
    if (wants(OutputKind::hom_dip) || wants(OutputKind::arm_statistics)) {
        if (!sc.statistics.alpha2)
            p.diag("hom_dip/arm_statistics need statistics.alpha2");
        if (!sc.statistics.transmission)
            p.diag("hom_dip/arm_statistics need statistics.transmission");
        if (!sc.statistics.pair_probability && !prob_sweep)
            p.diag("hom_dip/arm_statistics need statistics.pair_probability "
                   "(or a pair_probability sweep)");
    }
    if (sc.statistics.pair_probability && prob_sweep)
        p.diag("statistics.pair_probability conflicts with a "
               "pair_probability sweep");
    if (prob_sweep &&
        !(wants(OutputKind::hom_dip) || wants(OutputKind::arm_statistics)))
        p.diag("a pair_probability sweep is only used by hom_dip and "
               "arm_statistics");
    if (wants(OutputKind::hom_dip) && sc.hom.delays_ps.empty())
        p.diag("hom_dip needs hom.delay_ps or hom.delay_linspace_ps");

    // --- leftovers -------------------------------------------------------
    for (const auto& [key, e] : p.entries)
        if (!e.used)
            p.diag(e.line, "unknown key '" + key + "'");

    if (out.diagnostics.empty()) out.scenario = std::move(sc);
    return out;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
    ParsedScenario parsed = parse_scenario_text(read_text_file(path));
    if (!parsed.scenario) {
        std::string all = path.string() + ": " + parsed.diagnostics.front();
        if (parsed.diagnostics.size() > 1)
            all += " (+" + std::to_string(parsed.diagnostics.size() - 1) +
                   " more)";
        throw ParseError(all);
    }
    return std::move(*parsed.scenario);
}

std::vector<std::string>
validate_scenario_file(const std::filesystem::path& path) {
    return parse_scenario_text(read_text_file(path)).diagnostics;
}

} // namespace spdcsim
