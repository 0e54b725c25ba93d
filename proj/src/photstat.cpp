#include "spdcsim/photstat.hpp"

#include <cmath>

namespace spdcsim {

std::string to_string(ArmLabel label) {
    switch (label) {
    case ArmLabel::coherent: return "coherent";
    case ArmLabel::hsp: return "hsp";
    default: return "custom";
    }
}

ArmStatistics::ArmStatistics(std::vector<double> p, ArmLabel label,
                             std::string description)
    : p_(std::move(p)), label_(label), description_(std::move(description)) {
    if (p_.size() < 3)
        throw DomainError("photstat", "need at least P0..P2");
    double sum = 0.0;
    for (double v : p_) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            throw DomainError("photstat", "probability " + std::to_string(v) +
                                              " outside [0, 1]");
        sum += v;
    }
    if (sum > 1.0 + 1e-12)
        throw DomainError("photstat",
                          "probabilities sum to " + std::to_string(sum) + " > 1");
    tail_ = 1.0 - sum;
}

ArmStatistics ArmStatistics::coherent(double mean_photons, int n_max) {
    if (!(mean_photons >= 0.0))
        throw DomainError("photstat", "mean photon number must be >= 0");
    if (n_max < 2)
        throw DomainError("photstat", "cutoff must be at least 2");
    std::vector<double> p(n_max + 1);
    // P_n = e^-mu mu^n / n!, built up iteratively.
    double term = std::exp(-mean_photons);
    for (int n = 0; n <= n_max; ++n) {
        p[n] = term;
        term *= mean_photons / (n + 1);
    }
    return ArmStatistics(std::move(p), ArmLabel::coherent,
                         "coherent state, mean " + std::to_string(mean_photons));
}

ArmStatistics ArmStatistics::heralded_single_photon(double pair_probability,
                                                    double transmission) {
    if (!(pair_probability >= 0.0) || pair_probability >= 1.0)
        throw DomainError("photstat", "pair probability must lie in [0, 1)");
    if (!(transmission > 0.0) || transmission > 1.0)
        throw DomainError("photstat", "transmission must lie in (0, 1]");
    const double p = pair_probability;
    const double t = transmission;
    const double p1 = t + 4.0 * (t - 1.0) * t * p;
    const double p2 = 2.0 * t * t * p;
    const double p0 = 1.0 - p1 - p2;
    const auto check = [](double value, const char* term) {
        if (value < 0.0 || value > 1.0)
            throw DomainError("photstat",
                              std::string("heralded-photon model leaves its "
                                          "validity domain: ") +
                                  term + " = " + std::to_string(value));
    };
    check(p1, "P1");
    check(p2, "P2");
    check(p0, "P0");
    return ArmStatistics({p0, p1, p2}, ArmLabel::hsp,
                         "heralded single photon, pair probability " +
                             std::to_string(p) + ", transmission " +
                             std::to_string(t));
}

ArmStatistics ArmStatistics::thermal_pairs_with_loss(double pair_probability,
                                                     double transmission,
                                                     int n_max) {
    if (!(pair_probability >= 0.0) || pair_probability > 0.25)
        throw DomainError("photstat", "thermal diagnostic needs a single-pair "
                                      "probability in [0, 0.25]");
    if (!(transmission > 0.0) || transmission > 1.0)
        throw DomainError("photstat", "transmission must lie in (0, 1]");
    if (n_max < 2)
        throw DomainError("photstat", "cutoff must be at least 2");
    // Geometric pair law P(n) = (1-q) q^n with q(1-q) = pair_probability
    // (smaller root), i.e. thermal statistics with mean q/(1-q). A thermal
    // state through transmission t stays thermal with mean scaled by t.
    const double q = 0.5 * (1.0 - std::sqrt(1.0 - 4.0 * pair_probability));
    const double mean = transmission * q / (1.0 - q);
    std::vector<double> p(n_max + 1);
    const double base = 1.0 / (1.0 + mean);
    double term = base;
    for (int n = 0; n <= n_max; ++n) {
        p[n] = term;
        term *= mean * base;
    }
    return ArmStatistics(std::move(p), ArmLabel::custom,
                         "thermal pairs with binomial loss (textbook "
                         "diagnostic, not the two-term heralded model)");
}

ArmStatistics ArmStatistics::custom(std::vector<double> probabilities) {
    return ArmStatistics(std::move(probabilities), ArmLabel::custom, "custom");
}

double ArmStatistics::p(int n) const {
    if (n < 0)
        throw DomainError("photstat", "photon number must be >= 0");
    if (n >= static_cast<int>(p_.size())) return 0.0;
    return p_[static_cast<std::size_t>(n)];
}

ArmStatistics ArmStatistics::truncated(int n_max) const {
    if (n_max < 2 || n_max > this->n_max())
        throw DomainError("photstat", "invalid truncation cutoff");
    std::vector<double> p(p_.begin(), p_.begin() + n_max + 1);
    return ArmStatistics(std::move(p), label_, description_);
}

double dfg_g2(const DfgSeedModel& model) {
    if (!(model.n_seed >= 0.0))
        throw DomainError("photstat", "seed photon number must be >= 0");
    if (!(model.schmidt_number >= 1.0))
        throw DomainError("photstat", "mode number must be >= 1");
    return 1.0 + 1.0 / (model.n_seed + model.schmidt_number);
}

double dfg_g2_from_populations(double n_spontaneous, double n_stimulated,
                               double schmidt_number) {
    if (!(n_spontaneous > 0.0))
        throw DomainError("photstat", "spontaneous photon number must be > 0");
    if (!(n_stimulated >= 0.0))
        throw DomainError("photstat", "stimulated photon number must be >= 0");
    if (!(schmidt_number >= 1.0))
        throw DomainError("photstat", "mode number must be >= 1");
    return 1.0 +
           n_spontaneous / (schmidt_number * n_spontaneous + n_stimulated);
}

std::vector<std::pair<double, double>>
dfg_g2_curve(const DfgSeedModel& model_template,
             std::span<const double> n_seed_values) {
    std::vector<std::pair<double, double>> table;
    table.reserve(n_seed_values.size());
    for (double n : n_seed_values) {
        DfgSeedModel m = model_template;
        m.n_seed = n;
        table.emplace_back(n, dfg_g2(m));
    }
    return table;
}

} // namespace spdcsim
