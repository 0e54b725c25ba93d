#include "spdcsim/phasematch.hpp"

#include <cmath>

namespace spdcsim {

namespace {

const char* branch_name(Branch b) {
    switch (b) {
    case Branch::pump: return "pump";
    case Branch::signal: return "signal";
    default: return "idler";
    }
}

void check_window(Branch b, double omega, double omega_min, double omega_max) {
    if (omega < omega_min || omega > omega_max)
        throw DomainError("phasematch",
                          std::string(branch_name(b)) + " branch evaluated at " +
                              std::to_string(omega) +
                              " rad/s, outside its validity window");
}

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

} // namespace

DispersionModel::DispersionModel(std::string name, BranchModel pump,
                                 BranchModel signal, BranchModel idler)
    : name_(std::move(name)), pump_(pump), signal_(signal), idler_(idler) {}

DispersionModel DispersionModel::constant_index(std::string name, double n_pump,
                                                double n_signal, double n_idler,
                                                double omega_min,
                                                double omega_max) {
    for (double n : {n_pump, n_signal, n_idler})
        if (!(n > 0.0))
            throw DomainError("phasematch", "refractive index must be > 0");
    if (!(omega_min > 0.0) || !(omega_max > omega_min))
        throw DomainError("phasematch", "invalid validity window");
    return DispersionModel(
        std::move(name), ConstantIndexBranch{n_pump, omega_min, omega_max},
        ConstantIndexBranch{n_signal, omega_min, omega_max},
        ConstantIndexBranch{n_idler, omega_min, omega_max});
}

DispersionModel DispersionModel::taylor(std::string name, TaylorBranch pump,
                                        TaylorBranch signal, TaylorBranch idler) {
    for (const TaylorBranch& t : {pump, signal, idler}) {
        if (!(t.omega_ref > 0.0))
            throw DomainError("phasematch", "Taylor reference frequency must be > 0");
        if (!(t.omega_min > 0.0) || !(t.omega_max > t.omega_min))
            throw DomainError("phasematch", "invalid validity window");
    }
    return DispersionModel(std::move(name), pump, signal, idler);
}

const DispersionModel::BranchModel& DispersionModel::branch(Branch b) const noexcept {
    switch (b) {
    case Branch::pump: return pump_;
    case Branch::signal: return signal_;
    default: return idler_;
    }
}

double DispersionModel::wavenumber(Branch b, double omega) const {
    const BranchModel& m = branch(b);
    if (const auto* c = std::get_if<ConstantIndexBranch>(&m)) {
        check_window(b, omega, c->omega_min, c->omega_max);
        return c->index * omega / speed_of_light;
    }
    const auto& t = std::get<TaylorBranch>(m);
    check_window(b, omega, t.omega_min, t.omega_max);
    const double d = omega - t.omega_ref;
    return t.k0 + t.k1 * d + 0.5 * t.k2 * d * d;
}

QpmCrystal::QpmCrystal(DispersionModel dispersion, double length_m,
                       double poling_period_m, int poling_sign, PmfShape shape)
    : dispersion_(std::move(dispersion)), length_(length_m),
      poling_period_(poling_period_m), poling_sign_(poling_sign), shape_(shape) {
    if (!(length_m > 0.0))
        throw DomainError("phasematch", "crystal length must be > 0");
    if (!(poling_period_m > 0.0))
        throw DomainError("phasematch", "poling period must be > 0");
    if (poling_sign != 1 && poling_sign != -1)
        throw DomainError("phasematch", "poling sign must be +1 or -1");
}

double delta_k(const QpmCrystal& crystal, double omega_s, double omega_i) {
    const DispersionModel& d = crystal.dispersion();
    const double bare = d.wavenumber(Branch::signal, omega_s) +
                        d.wavenumber(Branch::idler, omega_i) -
                        d.wavenumber(Branch::pump, omega_s + omega_i);
    return bare - crystal.poling_sign() * 2.0 * pi / crystal.poling_period();
}

PolingSolution solve_poling_period(const DispersionModel& dispersion,
                                   double omega_s0, double omega_i0) {
    const double k_s = dispersion.wavenumber(Branch::signal, omega_s0);
    const double k_i = dispersion.wavenumber(Branch::idler, omega_i0);
    const double k_p = dispersion.wavenumber(Branch::pump, omega_s0 + omega_i0);
    const double bare = k_s + k_i - k_p;
    // below ~1e-12 of the wavenumber scale the difference is cancellation
    // noise and the solved period would be meaningless
    if (std::abs(bare) <= 1e-12 * (std::abs(k_s) + std::abs(k_i) + std::abs(k_p)))
        throw DomainError("phasematch",
                          "mismatch vanishes at the design pair; poling "
                          "period is undefined");
    return PolingSolution{2.0 * pi / std::abs(bare), bare > 0.0 ? 1 : -1};
}

std::complex<double> phasematching_function(const QpmCrystal& crystal,
                                            double omega_s, double omega_i) {
    const double x = 0.5 * delta_k(crystal, omega_s, omega_i) * crystal.length();
    if (crystal.shape() == PmfShape::sinc) return sinc(x);
    return std::exp(-gaussian_pmf_gamma * x * x);
}

namespace {

// Degenerate-band design point shared by both presets: signal/idler carriers
// in the 1550-nm band whose energies sum to a ~780 nm pump.
constexpr double preset_signal_wavelength = 1556.5e-9;
constexpr double preset_idler_wavelength = 1563.5e-9;
constexpr double preset_length = 10.0e-3;

// Group-delay walk-off (k1_signal - k1_pump) * length of the ppln-like
// model, calibrated so that the unfiltered joint amplitude built on default
// axes has a Schmidt number of 5.0 with the sinc profile.
constexpr double pplnlike_group_delay = 1.2039539319490783e-12; // s

QpmCrystal make_toy_constant() {
    DispersionModel model = DispersionModel::constant_index(
        "toy-constant", 2.25, 2.20, 2.15, 1e13, 1e16);
    const double w_s = wavelength_to_omega(preset_signal_wavelength).value();
    const double w_i = wavelength_to_omega(preset_idler_wavelength).value();
    const PolingSolution p = solve_poling_period(model, w_s, w_i);
    return QpmCrystal(std::move(model), preset_length, p.period, p.sign,
                      PmfShape::sinc);
}

QpmCrystal make_ppln_like() {
    const double w_s = wavelength_to_omega(preset_signal_wavelength).value();
    const double w_i = wavelength_to_omega(preset_idler_wavelength).value();
    const double w_p = w_s + w_i;

    // Phase indices set the poling period; the group-index split around the
    // pump group index sets the anti-diagonal width of the sinc stripe.
    const double n_phase_pump = 2.20;
    const double n_phase_signal = 2.14;
    const double n_phase_idler = 2.15;
    const double k1_pump = 2.25 / speed_of_light;
    const double delta = pplnlike_group_delay / preset_length; // s/m
    const double window = 6e13;                                // rad/s

    TaylorBranch pump{n_phase_pump * w_p / speed_of_light, k1_pump, 0.0, w_p,
                      w_p - 2.0 * window, w_p + 2.0 * window};
    TaylorBranch signal{n_phase_signal * w_s / speed_of_light, k1_pump + delta,
                        0.0, w_s, w_s - window, w_s + window};
    TaylorBranch idler{n_phase_idler * w_i / speed_of_light, k1_pump - delta,
                       0.0, w_i, w_i - window, w_i + window};
    DispersionModel model =
        DispersionModel::taylor("ppln-like", pump, signal, idler);
    const PolingSolution p = solve_poling_period(model, w_s, w_i);
    return QpmCrystal(std::move(model), preset_length, p.period, p.sign,
                      PmfShape::sinc);
}

} // namespace

const std::vector<CrystalPreset>& crystal_presets() {
    static const std::vector<CrystalPreset> presets = [] {
        std::vector<CrystalPreset> v;
        v.push_back({"toy-constant",
                     "constant-index toy crystal, analytically checkable",
                     make_toy_constant(), preset_signal_wavelength,
                     preset_idler_wavelength});
        v.push_back({"ppln-like",
                     "symmetric group-velocity-mismatch model of a 10 mm "
                     "poled crystal pumped near 780 nm",
                     make_ppln_like(), preset_signal_wavelength,
                     preset_idler_wavelength});
        return v;
    }();
    return presets;
}

const CrystalPreset& find_crystal_preset(const std::string& name) {
    for (const CrystalPreset& p : crystal_presets())
        if (p.name == name) return p;
    throw DomainError("phasematch", "unknown crystal preset '" + name + "'");
}

} // namespace spdcsim
