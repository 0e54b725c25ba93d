#include <doctest.h>

#include <cmath>

#include "spdcsim/phasematch.hpp"

using namespace spdcsim;

namespace {

const double w_s = wavelength_to_omega(1556.5e-9).value();
const double w_i = wavelength_to_omega(1563.5e-9).value();

DispersionModel toy_model() {
    return DispersionModel::constant_index("toy", 2.25, 2.20, 2.15, 1e13, 1e16);
}

} // namespace

TEST_CASE("constant-index wavenumbers and validity window") {
    const DispersionModel m = toy_model();
    // k = n omega / c
    CHECK(m.wavenumber(Branch::signal, w_s) ==
          doctest::Approx(2.20 * w_s / speed_of_light).epsilon(1e-15));
    CHECK(m.wavenumber(Branch::pump, w_s + w_i) ==
          doctest::Approx(2.25 * (w_s + w_i) / speed_of_light).epsilon(1e-15));
    CHECK_THROWS_AS(m.wavenumber(Branch::idler, 5e12), DomainError);
    CHECK_THROWS_AS(m.wavenumber(Branch::pump, 2e16), DomainError);
}

TEST_CASE("taylor wavenumbers") {
    const TaylorBranch b{100.0, 2e-9, 4e-26, 1e15, 1e13, 1e16};
    const DispersionModel m = DispersionModel::taylor("t", b, b, b);
    // k(omega_ref + d) = k0 + k1 d + k2/2 d^2 with d = 1e13
    const double d = 1e13;
    CHECK(m.wavenumber(Branch::signal, 1e15 + d) ==
          doctest::Approx(100.0 + 2e-9 * d + 0.5 * 4e-26 * d * d).epsilon(1e-14));
    CHECK_THROWS_AS(m.wavenumber(Branch::signal, 5e12), DomainError);
}

TEST_CASE("poling period solve at the design pair") {
    // oracle (extended precision): bare mismatch of the constant-index model
    // at (1556.5 nm, 1563.5 nm) is (-0.05 w_s - 0.10 w_i)/c
    const DispersionModel m = toy_model();
    const double bare = m.wavenumber(Branch::signal, w_s) +
                        m.wavenumber(Branch::idler, w_i) -
                        m.wavenumber(Branch::pump, w_s + w_i);
    CHECK(bare == doctest::Approx(-603703.64884161961).epsilon(1e-13));

    const PolingSolution p = solve_poling_period(m, w_s, w_i);
    CHECK(p.period == doctest::Approx(1.0407731209237675e-05).epsilon(1e-14));
    CHECK(p.sign == -1);

    // residual mismatch after compensation is zero to rounding
    const QpmCrystal crystal(toy_model(), 10e-3, p.period, p.sign);
    CHECK(std::abs(delta_k(crystal, w_s, w_i)) < 1e-6);

    // degenerate case: identical indices -> bare mismatch exactly zero
    const DispersionModel flat =
        DispersionModel::constant_index("flat", 2.0, 2.0, 2.0, 1e13, 1e16);
    CHECK_THROWS_AS(solve_poling_period(flat, w_s, w_i), DomainError);
}

TEST_CASE("residual mismatch with an uncompensated grating") {
    // oracle: bare - (+1) * 2 pi / 10 um = -603703.648... - 628318.530...
    const QpmCrystal crystal(toy_model(), 10e-3, 10e-6, +1);
    CHECK(delta_k(crystal, w_s, w_i) ==
          doctest::Approx(-1232022.1795595782).epsilon(1e-13));
}

TEST_CASE("crystal construction validation") {
    const PolingSolution p = solve_poling_period(toy_model(), w_s, w_i);
    CHECK_THROWS_AS(QpmCrystal(toy_model(), 0.0, p.period, p.sign), DomainError);
    CHECK_THROWS_AS(QpmCrystal(toy_model(), 10e-3, -1e-6, p.sign), DomainError);
    CHECK_THROWS_AS(QpmCrystal(toy_model(), 10e-3, p.period, 0), DomainError);
    CHECK_THROWS_AS(QpmCrystal(toy_model(), 10e-3, p.period, 2), DomainError);
}

TEST_CASE("sinc phase-matching amplitude") {
    const PolingSolution p = solve_poling_period(toy_model(), w_s, w_i);
    const QpmCrystal crystal(toy_model(), 10e-3, p.period, p.sign, PmfShape::sinc);

    // matched point: amplitude 1 (small-x series guard)
    CHECK(phasematching_function(crystal, w_s, w_i).real() ==
          doctest::Approx(1.0).epsilon(1e-12));

    // constant-index model: moving (w_s + d, w_i - d) changes the mismatch by
    // (n_s - n_i) d / c; pick d so x = delta_k L / 2 hits the half-intensity
    // abscissa x = 1.39155737825151 where sinc(x)^2 = 1/2
    const double x_half = 1.39155737825151;
    const double d = x_half * (2.0 / 10e-3) * speed_of_light / 0.05;
    const std::complex<double> amp =
        phasematching_function(crystal, w_s + d, w_i - d);
    CHECK(std::norm(amp) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(amp.imag() == 0.0);

    // first zero of sinc at x = pi; the abscissa is assembled from
    // wavenumber terms of magnitude ~1e4, so allow their rounding noise
    // (sinc(pi + e) ~ e / pi) through the zero
    const double d_zero = pi * (2.0 / 10e-3) * speed_of_light / 0.05;
    CHECK(std::abs(phasematching_function(crystal, w_s + d_zero, w_i - d_zero)) <
          1e-10);
}

TEST_CASE("gaussian phase-matching amplitude") {
    const PolingSolution p = solve_poling_period(toy_model(), w_s, w_i);
    const QpmCrystal crystal(toy_model(), 10e-3, p.period, p.sign,
                             PmfShape::gaussian);
    CHECK(phasematching_function(crystal, w_s, w_i).real() ==
          doctest::Approx(1.0).epsilon(1e-12));

    // at the sinc half-intensity abscissa the gamma = 0.193 Gaussian gives
    // exp(-gamma x^2) = 0.68816175213482345 in amplitude, i.e. intensity
    // 0.47356659710127 (about 5 % below the sinc value of exactly 1/2; the
    // pinned gamma reproduces the sinc amplitude FWHM, not its intensity
    // half-point)
    const double x_half = 1.39155737825151;
    const double d = x_half * (2.0 / 10e-3) * speed_of_light / 0.05;
    const std::complex<double> amp =
        phasematching_function(crystal, w_s + d, w_i - d);
    CHECK(amp.real() == doctest::Approx(0.68816175213482345).epsilon(1e-9));
    CHECK(std::norm(amp) == doctest::Approx(0.47356659710127).epsilon(1e-9));
}

TEST_CASE("preset registry") {
    const auto& presets = crystal_presets();
    REQUIRE(presets.size() == 2);
    CHECK(presets[0].name == "toy-constant");
    CHECK(presets[1].name == "ppln-like");
    CHECK_THROWS_AS(find_crystal_preset("no-such-crystal"), DomainError);

    const CrystalPreset& toy = find_crystal_preset("toy-constant");
    CHECK(toy.signal_center_wavelength == doctest::Approx(1556.5e-9));
    CHECK(toy.idler_center_wavelength == doctest::Approx(1563.5e-9));
    CHECK(toy.crystal.length() == doctest::Approx(10e-3));
    CHECK(toy.crystal.poling_period() ==
          doctest::Approx(1.0407731209237675e-05).epsilon(1e-14));
    CHECK(toy.crystal.poling_sign() == -1);
    CHECK(std::abs(delta_k(toy.crystal, w_s, w_i)) < 1e-6);
}

TEST_CASE("ppln-like preset geometry") {
    const CrystalPreset& preset = find_crystal_preset("ppln-like");
    const QpmCrystal& c = preset.crystal;

    // oracle: bare mismatch (-0.06 w_s - 0.05 w_i)/c -> period 2 pi / |bare|
    CHECK(c.poling_period() ==
          doctest::Approx(1.4178854837300125e-05).epsilon(1e-14));
    CHECK(c.poling_sign() == -1);
    CHECK(std::abs(delta_k(c, w_s, w_i)) < 1e-6);

    // symmetric group-velocity model: along the energy-conserving
    // anti-diagonal the mismatch grows as 2 (tau/L) d; along the diagonal the
    // two group delays cancel exactly (k2 = 0)
    const double d = 1e12;
    const double slope = (delta_k(c, w_s + d, w_i - d) - delta_k(c, w_s, w_i)) / d;
    const double tau = slope * c.length() / 2.0;
    CHECK(tau == doctest::Approx(1.2039539319490783e-12).epsilon(1e-9));
    CHECK(std::abs(delta_k(c, w_s + d, w_i + d) - delta_k(c, w_s, w_i)) < 1e-6);
}
