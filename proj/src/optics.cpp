#include "spdcsim/optics.hpp"

#include <algorithm>
#include <cmath>

namespace spdcsim {

AngularFrequency wavelength_to_omega(double wavelength_m) {
    if (!(wavelength_m > 0.0))
        throw DomainError("optics", "wavelength must be > 0, got " +
                                        std::to_string(wavelength_m));
    return AngularFrequency(2.0 * pi * speed_of_light / wavelength_m);
}

double omega_to_wavelength(AngularFrequency omega) {
    return 2.0 * pi * speed_of_light / omega.value();
}

double frequency_width_to_angular(double width_hz) {
    return 2.0 * pi * width_hz;
}

double wavelength_width_to_frequency(double width_m, double center_wavelength_m) {
    if (!(center_wavelength_m > 0.0))
        throw DomainError("optics", "carrier wavelength must be > 0");
    return speed_of_light * width_m / (center_wavelength_m * center_wavelength_m);
}

double frequency_width_to_wavelength(double width_hz, double center_wavelength_m) {
    if (!(center_wavelength_m > 0.0))
        throw DomainError("optics", "carrier wavelength must be > 0");
    return width_hz * center_wavelength_m * center_wavelength_m / speed_of_light;
}

double gaussian_sigma_from_intensity_fwhm(double fwhm_angular) {
    if (!(fwhm_angular > 0.0))
        throw DomainError("optics", "FWHM must be > 0");
    return fwhm_angular / (2.0 * std::sqrt(2.0 * std::log(2.0)));
}

SpectralAxis::SpectralAxis(AngularFrequency center, double span, int n_points)
    : center_(center.value()), span_(span), n_(n_points) {
    if (n_points < 3)
        throw DomainError("optics", "axis needs at least 3 points, got " +
                                        std::to_string(n_points));
    if (!(span > 0.0))
        throw DomainError("optics", "axis span must be > 0");
    if (!(center_ - 0.5 * span_ > 0.0))
        throw DomainError("optics", "axis extends to non-positive frequencies");
}

double fwhm_of_samples(const SpectralAxis& axis, std::span<const double> values) {
    if (static_cast<int>(values.size()) != axis.size())
        throw DomainError("optics", "sample count does not match axis");
    const auto it = std::max_element(values.begin(), values.end());
    const int peak = static_cast<int>(it - values.begin());
    const double half = 0.5 * *it;
    if (!(half > 0.0))
        throw DomainError("optics", "FWHM of an all-zero profile is undefined");

    // Walk outwards from the peak to the first samples below half maximum and
    // interpolate the crossing position linearly.
    int lo = peak;
    while (lo > 0 && values[lo] >= half) --lo;
    int hi = peak;
    while (hi < axis.size() - 1 && values[hi] >= half) ++hi;
    if (values[lo] >= half || values[hi] >= half)
        throw DomainError("optics", "half-maximum crossing lies outside the axis");

    const double t_lo = (half - values[lo]) / (values[lo + 1] - values[lo]);
    const double x_lo = axis.at(lo) + t_lo * axis.step();
    const double t_hi = (half - values[hi - 1]) / (values[hi] - values[hi - 1]);
    const double x_hi = axis.at(hi - 1) + t_hi * axis.step();
    return x_hi - x_lo;
}

SpectralProfile::SpectralProfile(SpectralAxis axis,
                                 std::vector<std::complex<double>> amplitude)
    : axis_(axis), amplitude_(std::move(amplitude)) {
    if (static_cast<int>(amplitude_.size()) != axis_.size())
        throw DomainError("optics", "amplitude count does not match axis");
}

double SpectralProfile::power() const {
    double acc = 0.0;
    for (const auto& a : amplitude_) acc += std::norm(a);
    return acc * axis_.step();
}

SpectralProfile SpectralProfile::normalized() const {
    const double p = power();
    if (!(p > 0.0))
        throw DomainError("optics", "cannot normalize an all-zero profile");
    const double scale = 1.0 / std::sqrt(p);
    std::vector<std::complex<double>> scaled(amplitude_.size());
    for (std::size_t i = 0; i < amplitude_.size(); ++i)
        scaled[i] = amplitude_[i] * scale;
    return SpectralProfile(axis_, std::move(scaled));
}

double SpectralProfile::intensity_fwhm() const {
    std::vector<double> intensity(amplitude_.size());
    for (std::size_t i = 0; i < amplitude_.size(); ++i)
        intensity[i] = std::norm(amplitude_[i]);
    return fwhm_of_samples(axis_, intensity);
}

SpectralProfile gaussian_profile(const SpectralAxis& axis, AngularFrequency center,
                                 double intensity_fwhm_angular, Warnings* warnings) {
    const double sigma = gaussian_sigma_from_intensity_fwhm(intensity_fwhm_angular);
    const double w0 = center.value();
    std::vector<std::complex<double>> amp(axis.size());
    for (int i = 0; i < axis.size(); ++i) {
        const double d = axis.at(i) - w0;
        amp[i] = std::exp(-d * d / (4.0 * sigma * sigma));
    }
    // Fraction of the analytic intensity integral outside [min, max]:
    // intensity is Gaussian with std sigma, so use the complementary error
    // function of the edge distances.
    const double lo = (w0 - axis.min()) / (std::sqrt(2.0) * sigma);
    const double hi = (axis.max() - w0) / (std::sqrt(2.0) * sigma);
    const double clipped = 0.5 * (std::erfc(lo) + std::erfc(hi));
    if (clipped > 1e-6)
        warn(warnings, "gaussian profile clipped: " + std::to_string(clipped) +
                           " of total power lies beyond the axis");
    return SpectralProfile(axis, std::move(amp));
}

SpectralProfile rect_profile(const SpectralAxis& axis, AngularFrequency center,
                             double full_width_angular) {
    if (!(full_width_angular > 0.0))
        throw DomainError("optics", "rectangle width must be > 0");
    const double w0 = center.value();
    std::vector<std::complex<double>> amp(axis.size());
    for (int i = 0; i < axis.size(); ++i)
        amp[i] = std::abs(axis.at(i) - w0) <= 0.5 * full_width_angular ? 1.0 : 0.0;
    return SpectralProfile(axis, std::move(amp));
}

} // namespace spdcsim
