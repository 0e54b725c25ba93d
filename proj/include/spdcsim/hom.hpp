#ifndef SPDCSIM_HOM_HPP
#define SPDCSIM_HOM_HPP

#include <span>
#include <utility>
#include <vector>

#include "spdcsim/optics.hpp"
#include "spdcsim/photstat.hpp"

namespace spdcsim {

// Two sources meeting on a fixed 50/50 splitter. R is the indistinguishability
// over all observables; the spectral profiles set the temporal dip shape.
struct HomScenario {
    ArmStatistics arm_a;
    ArmStatistics arm_b;
    double indistinguishability = 1.0; // R in [0, 1]
    SpectralProfile spectral_a;
    SpectralProfile spectral_b;
};

// Two readings of the same three-term coincidence budget
//   D = P1a P1b + P0a P2b + P2a P0b:
// v_max = [(1-R) P1a P1b + P0a P2b + P2a P0b] / D as printed in the source
// model, and suppressed_fraction = 1 - v_max = R P1a P1b / D, the fraction of
// baseline coincidences interference removes at zero delay. Which of the two
// a given figure plots as "visibility" is ambiguous, so both are reported;
// the dip depth uses suppressed_fraction (v_max would be 1 with no
// interference at all, which cannot be a dip depth).
struct VisibilityPair {
    double v_max;
    double suppressed_fraction;
};

VisibilityPair visibility_eq7(const ArmStatistics& arm_a,
                              const ArmStatistics& arm_b,
                              double indistinguishability);
VisibilityPair visibility_eq7(const HomScenario& scenario);

// |integral a*(w) b(w) e^{i w tau} dw|^2 on the overlap of the two axes,
// normalized by the same-grid powers so the value is always in [0, 1].
// Disjoint spectral support gives 0 (not an error).
double mode_overlap(const SpectralProfile& a, const SpectralProfile& b,
                    double delay_s);

struct HomResult {
    double v_max;               // verbatim three-term expression at full R
    double suppressed_fraction; // dip depth at zero delay
    double baseline;            // normalized coincidence at infinite delay (1)
    std::vector<std::pair<double, double>> dip; // (delay s, coincidence)
};

// coincidence(tau) = baseline * [1 - suppressed_fraction(R_eff)] with
// R_eff(tau) = R * mode_overlap(tau); baseline normalized to 1.
HomResult dip_profile(const HomScenario& scenario,
                      std::span<const double> delays_s);

struct FockOracleResult {
    double coincidence_at_zero;
    double coincidence_at_infinity;
    double visibility; // 1 - C(0)/C(inf)
};

// Brute-force coincidence bookkeeping behind the three-term expression:
// enumerates photon-number pairs (n_a, n_b) through a balanced splitter with
// exact few-photon outcome tables, treating each event as a mixture of
// perfectly indistinguishable (weight R) and perfectly distinguishable
// (weight 1-R) photons. Requires statistics truncated at n <= 2. By default
// only two-photon events are aggregated — the regime the three-term model
// describes, which assumes three- and four-photon events are negligible;
// include_higher_order adds the (1,2), (2,1) and (2,2) contributions as a
// diagnostic of that assumption.
FockOracleResult fock_oracle(const ArmStatistics& arm_a,
                             const ArmStatistics& arm_b,
                             double indistinguishability,
                             bool include_higher_order = false);
FockOracleResult fock_oracle(const HomScenario& scenario,
                             bool include_higher_order = false);

} // namespace spdcsim

#endif
