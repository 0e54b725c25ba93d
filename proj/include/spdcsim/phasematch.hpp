#ifndef SPDCSIM_PHASEMATCH_HPP
#define SPDCSIM_PHASEMATCH_HPP

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "spdcsim/optics.hpp"

namespace spdcsim {

enum class Branch { pump, signal, idler };

// k(omega) = n * omega / c with a frequency-independent index.
struct ConstantIndexBranch {
    double index;
    double omega_min; // validity window, rad/s
    double omega_max;
};

// k(omega) = k0 + k1 (omega - omega_ref) + k2/2 (omega - omega_ref)^2.
struct TaylorBranch {
    double k0;        // 1/m
    double k1;        // s/m (inverse group velocity)
    double k2;        // s^2/m (group velocity dispersion)
    double omega_ref; // rad/s
    double omega_min; // validity window, rad/s
    double omega_max;
};

// Wavenumber model for the three interacting waves. Evaluation outside a
// branch's validity window is a domain error, not an extrapolation.
class DispersionModel {
public:
    static DispersionModel constant_index(std::string name, double n_pump,
                                          double n_signal, double n_idler,
                                          double omega_min, double omega_max);
    static DispersionModel taylor(std::string name, TaylorBranch pump,
                                  TaylorBranch signal, TaylorBranch idler);

    double wavenumber(Branch branch, double omega) const;
    const std::string& name() const noexcept { return name_; }

private:
    using BranchModel = std::variant<ConstantIndexBranch, TaylorBranch>;

    DispersionModel(std::string name, BranchModel pump, BranchModel signal,
                    BranchModel idler);

    const BranchModel& branch(Branch b) const noexcept;

    std::string name_;
    BranchModel pump_;
    BranchModel signal_;
    BranchModel idler_;
};

enum class PmfShape { sinc, gaussian };

// Shape parameter of the Gaussian phase-matching profile exp(-gamma x^2),
// chosen to mimic the central sinc lobe.
inline constexpr double gaussian_pmf_gamma = 0.193;

// Periodically poled crystal: dispersion + length + poling period. The
// period is stored as a positive magnitude together with the sign of the
// compensated mismatch (the poling order is +-1).
class QpmCrystal {
public:
    QpmCrystal(DispersionModel dispersion, double length_m,
               double poling_period_m, int poling_sign,
               PmfShape shape = PmfShape::sinc);

    const DispersionModel& dispersion() const noexcept { return dispersion_; }
    double length() const noexcept { return length_; }
    double poling_period() const noexcept { return poling_period_; }
    int poling_sign() const noexcept { return poling_sign_; }
    PmfShape shape() const noexcept { return shape_; }

private:
    DispersionModel dispersion_;
    double length_;
    double poling_period_;
    int poling_sign_;
    PmfShape shape_;
};

// Residual mismatch including the grating vector:
// delta_k = k_s + k_i - k_p(omega_s + omega_i) - sign * 2 pi / period.
double delta_k(const QpmCrystal& crystal, double omega_s, double omega_i);

struct PolingSolution {
    double period; // m, > 0
    int sign;      // sign of the bare mismatch the grating compensates
};

// First-order poling period cancelling the bare mismatch at the design pair.
// Throws DomainError when the mismatch already vanishes.
PolingSolution solve_poling_period(const DispersionModel& dispersion,
                                   double omega_s0, double omega_i0);

// Longitudinal phase-matching amplitude at x = delta_k L / 2:
// sinc(x) = sin(x)/x, or exp(-gamma x^2) for the Gaussian shape.
// Real-valued by convention (overall phase dropped); complex return type so
// callers compose it directly into the joint amplitude.
std::complex<double> phasematching_function(const QpmCrystal& crystal,
                                            double omega_s, double omega_i);

// Named crystal configurations loadable from scenario files.
struct CrystalPreset {
    std::string name;
    std::string description;
    QpmCrystal crystal;
    double signal_center_wavelength; // m, design point
    double idler_center_wavelength;  // m
};

const std::vector<CrystalPreset>& crystal_presets();
const CrystalPreset& find_crystal_preset(const std::string& name);

} // namespace spdcsim

#endif
