#include <doctest.h>

#include <cmath>

#include "spdcsim/optics.hpp"

using namespace spdcsim;

TEST_CASE("wavelength/angular-frequency conversions") {
    // oracle: omega = 2 pi c / lambda evaluated in extended precision
    CHECK(wavelength_to_omega(780e-9).value() ==
          doctest::Approx(2414937906806222.0).epsilon(1e-14));
    CHECK(wavelength_to_omega(1556.5e-9).value() ==
          doctest::Approx(1210184110060297.5).epsilon(1e-14));
    CHECK(wavelength_to_omega(1563.5e-9).value() ==
          doctest::Approx(1204765952867830.8).epsilon(1e-14));

    // round trip is exact to rounding
    const AngularFrequency w = wavelength_to_omega(1556.5e-9);
    CHECK(omega_to_wavelength(w) == doctest::Approx(1556.5e-9).epsilon(1e-15));

    CHECK_THROWS_AS(wavelength_to_omega(0.0), DomainError);
    CHECK_THROWS_AS(wavelength_to_omega(-1e-6), DomainError);
    CHECK_THROWS_AS(AngularFrequency(0.0), DomainError);
}

TEST_CASE("width conversions") {
    // 80 GHz intensity FWHM -> angular width and Gaussian amplitude sigma:
    // sigma = 2 pi 80e9 / (2 sqrt(2 ln 2))
    const double dw = frequency_width_to_angular(80e9);
    CHECK(dw == doctest::Approx(502654824574.36688).epsilon(1e-14));
    CHECK(gaussian_sigma_from_intensity_fwhm(dw) ==
          doctest::Approx(213457850265.47983).epsilon(1e-14));

    // 0.2 nm at 1563.5 nm -> 24.53 GHz: dnu = c dlambda / lambda^2
    CHECK(wavelength_width_to_frequency(0.2e-9, 1563.5e-9) ==
          doctest::Approx(24527592794.08157).epsilon(1e-14));
    // inverse of the above
    CHECK(frequency_width_to_wavelength(24527592794.08157, 1563.5e-9) ==
          doctest::Approx(0.2e-9).epsilon(1e-14));

    CHECK_THROWS_AS(gaussian_sigma_from_intensity_fwhm(-1.0), DomainError);
}

TEST_CASE("spectral axis grid") {
    const AngularFrequency c0(1e15);
    const SpectralAxis axis(c0, 2e12, 101);
    CHECK(axis.size() == 101);
    CHECK(axis.step() == doctest::Approx(2e10).epsilon(1e-15));
    CHECK(axis.at(0) == doctest::Approx(1e15 - 1e12).epsilon(1e-15));
    CHECK(axis.at(100) == doctest::Approx(1e15 + 1e12).epsilon(1e-15));
    CHECK(axis.at(50) == doctest::Approx(1e15).epsilon(1e-15));

    // uniformity: successive steps identical to rounding
    for (int i = 1; i < axis.size(); ++i)
        CHECK(axis.at(i) - axis.at(i - 1) ==
              doctest::Approx(axis.step()).epsilon(1e-12));

    CHECK_THROWS_AS(SpectralAxis(c0, 2e12, 2), DomainError);
    CHECK_THROWS_AS(SpectralAxis(c0, -1.0, 11), DomainError);
    // span reaching non-positive frequencies is rejected
    CHECK_THROWS_AS(SpectralAxis(AngularFrequency(1e12), 4e12, 11), DomainError);
}

TEST_CASE("gaussian profile width and normalization") {
    const AngularFrequency c0(1e15);
    const double fwhm = 5e11;
    const SpectralAxis axis(c0, 10.0 * fwhm, 2001);
    const SpectralProfile g = gaussian_profile(axis, c0, fwhm);

    // peak amplitude 1 at the carrier
    CHECK(std::abs(g.amplitude()[1000]) == doctest::Approx(1.0).epsilon(1e-12));
    // measured intensity FWHM returns the requested width
    CHECK(g.intensity_fwhm() == doctest::Approx(fwhm).epsilon(1e-5));
    // analytic power of exp(-d^2/(2 sigma^2)) is sigma sqrt(2 pi)
    const double sigma = gaussian_sigma_from_intensity_fwhm(fwhm);
    CHECK(g.power() ==
          doctest::Approx(sigma * std::sqrt(2.0 * pi)).epsilon(1e-6));
    CHECK(g.normalized().power() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gaussian profile clipping warning") {
    const AngularFrequency c0(1e15);
    const double fwhm = 5e11;
    Warnings warnings;
    // +-5 FWHM: clipped fraction ~ erfc(10/2.355*...) << 1e-6, no warning
    gaussian_profile(SpectralAxis(c0, 10.0 * fwhm, 101), c0, fwhm, &warnings);
    CHECK(warnings.empty());
    // +-1 FWHM: ~2.35 sigma each side, clipped ~1.9e-2 > 1e-6
    gaussian_profile(SpectralAxis(c0, 2.0 * fwhm, 101), c0, fwhm, &warnings);
    CHECK(warnings.size() == 1);
}

TEST_CASE("rectangular profile covers whole grid cells") {
    const AngularFrequency c0(1e15);
    const SpectralAxis axis(c0, 1e12, 1001);
    const double width = 2.375e11;
    const SpectralProfile r = rect_profile(axis, c0, width);
    // power = (number of points inside) * step; within one cell of width
    CHECK(std::abs(r.power() - width) <= axis.step() * (1.0 + 1e-12));
    // lattice points in the closed band around the centre point
    int inside = 0;
    for (const auto& a : r.amplitude()) inside += a.real() != 0.0 ? 1 : 0;
    CHECK(inside ==
          2 * static_cast<int>(std::floor(0.5 * width / axis.step())) + 1);
}

TEST_CASE("interpolated FWHM of samples") {
    const SpectralAxis axis(AngularFrequency(1e15), 1e12, 501);
    // triangle peak: FWHM is exactly half the base width
    std::vector<double> tri(501, 0.0);
    for (int i = 0; i < 501; ++i)
        tri[i] = std::max(0.0, 1.0 - std::abs(i - 250) / 100.0);
    CHECK(fwhm_of_samples(axis, tri) ==
          doctest::Approx(100.0 * axis.step()).epsilon(1e-9));

    // crossing outside the axis -> domain error
    std::vector<double> flat(501, 1.0);
    CHECK_THROWS_AS(fwhm_of_samples(axis, flat), DomainError);
}
