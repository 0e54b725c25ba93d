#ifndef SPDCSIM_SCHMIDT_HPP
#define SPDCSIM_SCHMIDT_HPP

#include <span>
#include <vector>

#include "spdcsim/jsa.hpp"

namespace spdcsim {

// Schmidt coefficients c_n (descending, c_n >= 0) of a joint amplitude.
// Derived quantities use the normalized moments, so a small truncation or
// normalization residual does not bias them; the residual is kept explicit.
class SchmidtSpectrum {
public:
    explicit SchmidtSpectrum(std::vector<double> coefficients);

    std::span<const double> coefficients() const noexcept { return c_; }
    // 1 - sum c_n^2: what the retained coefficients fail to capture of a
    // unit-norm state.
    double truncation_residual() const noexcept { return residual_; }
    // K = (sum c^2)^2 / sum c^4
    double schmidt_number() const noexcept { return schmidt_number_; }
    // Heralded single-photon spectral purity, 1/K.
    double purity() const noexcept { return 1.0 / schmidt_number_; }

private:
    std::vector<double> c_;
    double residual_;
    double schmidt_number_;
};

// Singular-value decomposition of the gridded amplitude; coefficients are
// scaled by the cell area so that a normalized grid gives sum c^2 = 1.
SchmidtSpectrum schmidt_decompose(const JsaGrid& grid);

// Independent purity route: Tr(rho^2) of the reduced signal state computed
// from the grid by matrix products, never touching the SVD.
double purity_via_trace(const JsaGrid& grid);

// Unconditioned second-order autocorrelation of one arm at zero delay for a
// multimode squeezed-vacuum source: g2(0) = 1 + purity.
double g2_from_purity(double purity);
double purity_from_g2(double g2);

struct FilterSweepPoint {
    double width_value; // in the unit of the sweep's filter template
    double width_nm;
    double width_ghz;
    double purity;
    double schmidt_number;
    double heralding_efficiency;
};

// Apply the template filter at each width to the same base grid and record
// purity, Schmidt number and heralded-arm transmission. Points are
// independent, so they are distributed over `workers` threads and written to
// preallocated slots; output order and values do not depend on the split.
std::vector<FilterSweepPoint>
purity_vs_filter_sweep(const JsaGrid& base, const FilterSpec& filter_template,
                       std::span<const double> widths, int workers = 1);

} // namespace spdcsim

#endif
