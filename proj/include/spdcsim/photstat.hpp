#ifndef SPDCSIM_PHOTSTAT_HPP
#define SPDCSIM_PHOTSTAT_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spdcsim/errors.hpp"

namespace spdcsim {

enum class ArmLabel { coherent, hsp, custom };

std::string to_string(ArmLabel label);

// Photon-number distribution of one interferometer arm, truncated at a
// configurable cutoff. All P_n >= 0 and sum P_n <= 1 + 1e-12 (a dropped
// high-n tail is allowed and recorded).
class ArmStatistics {
public:
    // Poisson law of a coherent state with mean |alpha|^2.
    static ArmStatistics coherent(double mean_photons, int n_max = 10);

    // Two-term heralded-single-photon model:
    //   P1 = t + 4 (t-1) t p,  P2 = 2 t^2 p,  P0 = 1 - P1 - P2,
    // with p the pair-emission probability and t the transmission. The model
    // assumes low detection efficiency on the heralding arm; combinations
    // driving any P_n outside [0,1] are rejected as out of its domain.
    static ArmStatistics heralded_single_photon(double pair_probability,
                                                double transmission);

    // Textbook diagnostic alternative to heralded_single_photon(): thermal
    // pair-number statistics (geometric law matched to the same single-pair
    // probability) followed by binomial loss 1-t. Not the two-term model
    // used everywhere else; labeled custom.
    static ArmStatistics thermal_pairs_with_loss(double pair_probability,
                                                 double transmission,
                                                 int n_max = 10);

    static ArmStatistics custom(std::vector<double> probabilities);

    std::span<const double> probabilities() const noexcept { return p_; }
    double p(int n) const;   // 0 beyond the cutoff
    int n_max() const noexcept { return static_cast<int>(p_.size()) - 1; }
    ArmLabel label() const noexcept { return label_; }
    const std::string& description() const noexcept { return description_; }
    // Fraction lost to truncation, 1 - sum P_n (>= -1e-12).
    double tail() const noexcept { return tail_; }

    // Same distribution cut at a lower n_max (tail grows accordingly).
    ArmStatistics truncated(int n_max) const;

private:
    ArmStatistics(std::vector<double> p, ArmLabel label, std::string description);

    std::vector<double> p_;
    ArmLabel label_;
    std::string description_;
    double tail_;
};

// Seeded difference-frequency g2 model: n_seed photons in the seed field,
// schmidt_number modes, and (for the unsimplified form only) n_spontaneous
// photons per mode from spontaneous emission.
struct DfgSeedModel {
    double n_seed = 0.0;
    double schmidt_number = 1.0;
    double n_spontaneous = 1.0;
};

// g2(0) = 1 + 1/(n_seed + K).
double dfg_g2(const DfgSeedModel& model);
// Unsimplified form 1 + N_sp/(K N_sp + N_st); equals dfg_g2 whenever
// N_st = n_seed * N_sp.
double dfg_g2_from_populations(double n_spontaneous, double n_stimulated,
                               double schmidt_number);
// Tabulated curve over seed intensities; strictly decreasing, asymptote 1.
std::vector<std::pair<double, double>>
dfg_g2_curve(const DfgSeedModel& model_template,
             std::span<const double> n_seed_values);

} // namespace spdcsim

#endif
