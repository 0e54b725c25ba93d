#ifndef SPDCSIM_OPTICS_HPP
#define SPDCSIM_OPTICS_HPP

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "spdcsim/errors.hpp"

namespace spdcsim {

inline constexpr double speed_of_light = 299792458.0; // m/s, exact
inline constexpr double pi = 3.14159265358979323846;

// Sink for non-fatal diagnostics (clipped tails, residual boundary
// amplitude, ...). Callers that don't care pass nullptr.
using Warnings = std::vector<std::string>;

inline void warn(Warnings* sink, const std::string& message) {
    if (sink) sink->push_back(message);
}

// Angular frequency of a physical photon mode, rad/s. Always > 0;
// detunings and bandwidths are carried as plain doubles.
class AngularFrequency {
public:
    explicit AngularFrequency(double rad_per_s) : value_(rad_per_s) {
        if (!(rad_per_s > 0.0))
            throw DomainError("optics", "angular frequency must be > 0, got " +
                                            std::to_string(rad_per_s));
    }

    double value() const noexcept { return value_; }

    friend bool operator==(AngularFrequency a, AngularFrequency b) noexcept {
        return a.value_ == b.value_;
    }

private:
    double value_;
};

// Vacuum wavelength <-> angular frequency, omega = 2 pi c / lambda.
AngularFrequency wavelength_to_omega(double wavelength_m);
double omega_to_wavelength(AngularFrequency omega);

// Width conversions. "fwhm" always refers to the intensity profile.
// Ordinary-frequency width (Hz) -> angular width (rad/s).
double frequency_width_to_angular(double width_hz);
// Wavelength width (m) at a given carrier -> ordinary-frequency width (Hz),
// |d nu| = c dlambda / lambda^2.
double wavelength_width_to_frequency(double width_m, double center_wavelength_m);
double frequency_width_to_wavelength(double width_hz, double center_wavelength_m);
// Gaussian amplitude scale: a(omega) ~ exp(-(omega-omega0)^2/(4 sigma^2)) has
// intensity FWHM = 2 sqrt(2 ln 2) sigma. Input in rad/s.
double gaussian_sigma_from_intensity_fwhm(double fwhm_angular);

// Uniform grid of angular frequencies centred on a carrier.
// Points at center - span/2 + i*span/(n-1), i = 0..n-1; all must be > 0.
class SpectralAxis {
public:
    SpectralAxis(AngularFrequency center, double span, int n_points);

    double center() const noexcept { return center_; }
    double span() const noexcept { return span_; }
    int size() const noexcept { return n_; }
    double step() const noexcept { return span_ / (n_ - 1); }
    double at(int i) const noexcept { return center_ - 0.5 * span_ + i * step(); }
    double min() const noexcept { return at(0); }
    double max() const noexcept { return at(n_ - 1); }

    friend bool operator==(const SpectralAxis& a, const SpectralAxis& b) noexcept {
        return a.center_ == b.center_ && a.span_ == b.span_ && a.n_ == b.n_;
    }

private:
    double center_;
    double span_;
    int n_;
};

// Interpolated full width at half maximum of sampled values on an axis.
// Uses linear interpolation of the half-maximum crossings around the peak.
// Throws DomainError if either crossing falls outside the axis.
double fwhm_of_samples(const SpectralAxis& axis, std::span<const double> values);

// Complex amplitude sampled on a SpectralAxis.
class SpectralProfile {
public:
    SpectralProfile(SpectralAxis axis, std::vector<std::complex<double>> amplitude);

    const SpectralAxis& axis() const noexcept { return axis_; }
    std::span<const std::complex<double>> amplitude() const noexcept {
        return amplitude_;
    }

    // integral |a|^2 domega (rectangle rule, consistent with the grid inner
    // product used for the joint amplitude).
    double power() const;
    // Scaled so power() == 1. Throws DomainError on an all-zero profile.
    SpectralProfile normalized() const;
    // FWHM of |a|^2.
    double intensity_fwhm() const;

private:
    SpectralAxis axis_;
    std::vector<std::complex<double>> amplitude_;
};

// Gaussian amplitude with the given intensity FWHM (rad/s), unit peak.
// Warns if more than 1e-6 of the total power lies beyond the axis.
SpectralProfile gaussian_profile(const SpectralAxis& axis, AngularFrequency center,
                                 double intensity_fwhm_angular,
                                 Warnings* warnings = nullptr);

// Unit-height rectangle of the given full width (rad/s). A grid point is
// inside when its centre lies within the closed interval.
SpectralProfile rect_profile(const SpectralAxis& axis, AngularFrequency center,
                             double full_width_angular);

} // namespace spdcsim

#endif
