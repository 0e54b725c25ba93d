#include "spdcsim/hom.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace spdcsim {

namespace {

void check_r(double r) {
    if (!(r >= 0.0) || r > 1.0)
        throw DomainError("hom", "indistinguishability must lie in [0, 1]");
}

struct CoincidenceTerms {
    double interfering; // P1a P1b
    double steady;      // P0a P2b + P2a P0b
    double total() const { return interfering + steady; }
};

CoincidenceTerms coincidence_terms(const ArmStatistics& a,
                                   const ArmStatistics& b) {
    CoincidenceTerms t;
    t.interfering = a.p(1) * b.p(1);
    t.steady = a.p(0) * b.p(2) + a.p(2) * b.p(0);
    if (!(t.total() > 0.0))
        throw DomainError("hom", "no two-photon coincidences: the three-term "
                                 "denominator vanishes");
    return t;
}

} // namespace

VisibilityPair visibility_eq7(const ArmStatistics& arm_a,
                              const ArmStatistics& arm_b,
                              double indistinguishability) {
    check_r(indistinguishability);
    const CoincidenceTerms t = coincidence_terms(arm_a, arm_b);
    const double r = indistinguishability;
    VisibilityPair v;
    v.v_max = ((1.0 - r) * t.interfering + t.steady) / t.total();
    v.suppressed_fraction = r * t.interfering / t.total();
    return v;
}

VisibilityPair visibility_eq7(const HomScenario& scenario) {
    return visibility_eq7(scenario.arm_a, scenario.arm_b,
                          scenario.indistinguishability);
}

namespace {

// Linear interpolation of a profile at an arbitrary frequency (0 outside).
std::complex<double> sample(const SpectralProfile& p, double omega) {
    const SpectralAxis& ax = p.axis();
    if (omega < ax.min() || omega > ax.max()) return 0.0;
    const double u = (omega - ax.min()) / ax.step();
    const int i = std::min(static_cast<int>(u), ax.size() - 2);
    const double f = u - i;
    return (1.0 - f) * p.amplitude()[i] + f * p.amplitude()[i + 1];
}

} // namespace

double mode_overlap(const SpectralProfile& a, const SpectralProfile& b,
                    double delay_s) {
    const SpectralAxis& axa = a.axis();
    const SpectralAxis& axb = b.axis();

    const bool same_axis = axa == axb;
    const double lo = std::max(axa.min(), axb.min());
    const double hi = std::min(axa.max(), axb.max());
    if (!same_axis && !(hi > lo)) return 0.0; // disjoint supports

    const double step = same_axis ? axa.step() : std::min(axa.step(), axb.step());
    const int n = same_axis
                      ? axa.size()
                      : std::max(3, static_cast<int>((hi - lo) / step) + 1);

    std::complex<double> cross = 0.0;
    double power_a = 0.0;
    double power_b = 0.0;
    for (int k = 0; k < n; ++k) {
        const double omega =
            same_axis ? axa.at(k) : lo + (hi - lo) * k / (n - 1);
        const std::complex<double> va = same_axis ? a.amplitude()[k] : sample(a, omega);
        const std::complex<double> vb = same_axis ? b.amplitude()[k] : sample(b, omega);
        cross += std::conj(va) * vb *
                 std::exp(std::complex<double>(0.0, omega * delay_s));
        power_a += std::norm(va);
        power_b += std::norm(vb);
    }
    if (!(power_a > 0.0) || !(power_b > 0.0)) return 0.0;
    // Normalizing by the same-grid powers keeps the value in [0, 1] by
    // Cauchy-Schwarz even under resampling error.
    return std::norm(cross) / (power_a * power_b);
}

HomResult dip_profile(const HomScenario& scenario,
                      std::span<const double> delays_s) {
    check_r(scenario.indistinguishability);
    const CoincidenceTerms t =
        coincidence_terms(scenario.arm_a, scenario.arm_b);
    const VisibilityPair v = visibility_eq7(scenario);

    HomResult result;
    result.v_max = v.v_max;
    result.suppressed_fraction = v.suppressed_fraction;
    result.baseline = 1.0;
    result.dip.reserve(delays_s.size());
    for (double tau : delays_s) {
        const double r_eff =
            scenario.indistinguishability *
            mode_overlap(scenario.spectral_a, scenario.spectral_b, tau);
        const double suppressed = r_eff * t.interfering / t.total();
        result.dip.emplace_back(tau, result.baseline * (1.0 - suppressed));
    }
    return result;
}

namespace {

// Coincidence probabilities for |n_a, n_b> on a balanced splitter, indexed
// [n_a][n_b]. "ind": photons mutually indistinguishable (quantum amplitudes
// interfere); "dist": fully distinguishable (each photon routed
// independently, coincidence 1 - 2^(1-n) for n photons in total).
constexpr double splitter_ind[3][3] = {
    {0.0, 0.0, 0.5},
    {0.0, 0.0, 0.25},
    {0.5, 0.25, 0.25},
};
constexpr double splitter_dist[3][3] = {
    {0.0, 0.0, 0.5},
    {0.0, 0.5, 0.75},
    {0.5, 0.75, 0.875},
};

void require_truncated(const ArmStatistics& arm, const char* which) {
    for (int n = 3; n <= arm.n_max(); ++n)
        if (arm.p(n) != 0.0)
            throw DomainError("hom",
                              std::string("fock_oracle needs ") + which +
                                  " statistics truncated at n <= 2 (use "
                                  "ArmStatistics::truncated)");
}

} // namespace

FockOracleResult fock_oracle(const ArmStatistics& arm_a,
                             const ArmStatistics& arm_b,
                             double indistinguishability,
                             bool include_higher_order) {
    check_r(indistinguishability);
    require_truncated(arm_a, "arm_a");
    require_truncated(arm_b, "arm_b");

    const double r = indistinguishability;
    double c_zero = 0.0;
    double c_inf = 0.0;
    for (int na = 0; na <= 2; ++na) {
        for (int nb = 0; nb <= 2; ++nb) {
            if (!include_higher_order && na + nb != 2) continue;
            const double weight = arm_a.p(na) * arm_b.p(nb);
            c_inf += weight * splitter_dist[na][nb];
            c_zero += weight * (r * splitter_ind[na][nb] +
                                (1.0 - r) * splitter_dist[na][nb]);
        }
    }
    if (!(c_inf > 0.0))
        throw DomainError("hom", "no coincidences at the distinguishable "
                                 "baseline; visibility undefined");
    return FockOracleResult{c_zero, c_inf, 1.0 - c_zero / c_inf};
}

FockOracleResult fock_oracle(const HomScenario& scenario,
                             bool include_higher_order) {
    return fock_oracle(scenario.arm_a, scenario.arm_b,
                       scenario.indistinguishability, include_higher_order);
}

} // namespace spdcsim
