#ifndef SPDCSIM_JSA_HPP
#define SPDCSIM_JSA_HPP

#include <Eigen/Core>
#include <filesystem>
#include <optional>
#include <utility>

#include "spdcsim/optics.hpp"
#include "spdcsim/phasematch.hpp"

namespace spdcsim {

enum class Arm { signal, idler };
enum class ProfileShape { gaussian, rect };
enum class WidthUnit { frequency_hz, wavelength_m };

struct PumpSpec {
    double center_wavelength = 780e-9; // m
    double intensity_fwhm_hz = 80e9;   // ordinary frequency, intensity FWHM
    ProfileShape shape = ProfileShape::gaussian;
    // Informational pulse metadata, echoed into run manifests only.
    double pulse_duration_s = 2e-12;
    double repetition_rate_hz = 76e6;
};

struct FilterSpec {
    Arm arm = Arm::idler;
    ProfileShape profile = ProfileShape::rect;
    // Transmission-band centre; defaults to the arm's axis centre.
    std::optional<double> center_wavelength; // m
    double width = 0.0;                      // interpreted per `unit`
    WidthUnit unit = WidthUnit::wavelength_m;
};

// Joint spectral amplitude sampled on a signal x idler grid
// (rows = signal axis, columns = idler axis).
class JsaGrid {
public:
    JsaGrid(SpectralAxis signal, SpectralAxis idler, Eigen::MatrixXcd amplitude,
            double heralding_efficiency = 1.0);

    const SpectralAxis& signal_axis() const noexcept { return signal_; }
    const SpectralAxis& idler_axis() const noexcept { return idler_; }
    const Eigen::MatrixXcd& amplitude() const noexcept { return amplitude_; }
    double cell_area() const noexcept { return signal_.step() * idler_.step(); }

    // sum |S|^2 * cell_area
    double norm_squared() const;
    JsaGrid normalized() const;

    // Fraction of the pre-filter power surviving the filters applied so far
    // (1 for a freshly built grid).
    double heralding_efficiency() const noexcept { return heralding_efficiency_; }

private:
    SpectralAxis signal_;
    SpectralAxis idler_;
    Eigen::MatrixXcd amplitude_;
    double heralding_efficiency_;
};

// Signal/idler axes sized to the joint amplitude itself: each axis is centred
// on its design carrier and spans +-span_fwhm times the intensity FWHM of the
// corresponding marginal, measured on a coarse probe grid (the probe span is
// doubled until it safely brackets both marginals).
std::pair<SpectralAxis, SpectralAxis>
default_axes(const PumpSpec& pump, const QpmCrystal& crystal,
             double signal_center_wavelength, double idler_center_wavelength,
             int n_points = 512, double span_fwhm = 5.0);

// S(omega_s, omega_i) = pump envelope(omega_s + omega_i) * phase-matching
// amplitude, normalized to unit sum |S|^2 * cell_area. The grid fill is
// split over `workers` threads; results are bit-identical for any count.
// Warns when boundary amplitude exceeds 1e-4 of the peak (grid too small).
JsaGrid build_jsa(const PumpSpec& pump, const QpmCrystal& crystal,
                  const SpectralAxis& signal, const SpectralAxis& idler,
                  int workers = 1, Warnings* warnings = nullptr);

// Multiply one arm by a spectral filter, renormalize, and fold the power
// ratio into the heralding-efficiency metadata. Gaussian filters are
// amplitude masks with the given intensity FWHM; rectangles include a grid
// point when its centre lies inside the band.
JsaGrid apply_filter(const JsaGrid& grid, const FilterSpec& filter,
                     Warnings* warnings = nullptr);

// Intensity marginal I(omega_arm) = sum_other |S|^2 * step_other, returned
// as a real profile with amplitude sqrt(I) so that profile.power() is the
// grid norm and intensity_fwhm() measures the marginal width.
SpectralProfile intensity_marginal(const JsaGrid& grid, Arm arm);

// Difference-frequency partner: 1/lambda_out = 1/lambda_pump - 1/lambda_seed.
double dfg_partner_wavelength(double pump_wavelength_m, double seed_wavelength_m);

// Exports. CSV columns: omega_s,omega_i,re,im (signal-major order).
// Binary layout, little-endian: per axis a header of centre (f64), span
// (f64), point count (u64), then row-major (re, im) float64 pairs.
void write_jsa_csv(const JsaGrid& grid, const std::filesystem::path& path);
void write_jsa_binary(const JsaGrid& grid, const std::filesystem::path& path);
JsaGrid read_jsa_binary(const std::filesystem::path& path);

} // namespace spdcsim

#endif
