#include "spdcsim/jsa.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spdcsim {

JsaGrid::JsaGrid(SpectralAxis signal, SpectralAxis idler,
                 Eigen::MatrixXcd amplitude, double heralding_efficiency)
    : signal_(signal), idler_(idler), amplitude_(std::move(amplitude)),
      heralding_efficiency_(heralding_efficiency) {
    if (amplitude_.rows() != signal_.size() || amplitude_.cols() != idler_.size())
        throw DomainError("jsa", "amplitude shape does not match axes");
    if (!(heralding_efficiency > 0.0) || heralding_efficiency > 1.0 + 1e-12)
        throw DomainError("jsa", "heralding efficiency must lie in (0, 1]");
}

double JsaGrid::norm_squared() const {
    // Fixed summation order (column-major storage order) keeps the value
    // bit-identical however the grid was filled.
    double acc = 0.0;
    const std::complex<double>* p = amplitude_.data();
    const Eigen::Index n = amplitude_.size();
    for (Eigen::Index k = 0; k < n; ++k) acc += std::norm(p[k]);
    return acc * cell_area();
}

JsaGrid JsaGrid::normalized() const {
    const double n2 = norm_squared();
    if (!(n2 > 0.0))
        throw DomainError("jsa", "cannot normalize an all-zero joint amplitude");
    return JsaGrid(signal_, idler_, amplitude_ / std::sqrt(n2),
                   heralding_efficiency_);
}

namespace {

// Pump spectral envelope evaluated at the summed frequency.
class PumpEnvelope {
public:
    PumpEnvelope(const PumpSpec& pump) {
        center_ = wavelength_to_omega(pump.center_wavelength).value();
        const double fwhm = frequency_width_to_angular(pump.intensity_fwhm_hz);
        if (!(fwhm > 0.0))
            throw DomainError("jsa", "pump bandwidth must be > 0");
        shape_ = pump.shape;
        if (shape_ == ProfileShape::gaussian)
            sigma_ = gaussian_sigma_from_intensity_fwhm(fwhm);
        else
            sigma_ = 0.5 * fwhm; // half width of the rectangle
    }

    double operator()(double omega_sum) const {
        const double d = omega_sum - center_;
        if (shape_ == ProfileShape::gaussian)
            return std::exp(-d * d / (4.0 * sigma_ * sigma_));
        return std::abs(d) <= sigma_ ? 1.0 : 0.0;
    }

private:
    double center_;
    double sigma_;
    ProfileShape shape_;
};

} // namespace

JsaGrid build_jsa(const PumpSpec& pump, const QpmCrystal& crystal,
                  const SpectralAxis& signal, const SpectralAxis& idler,
                  int workers, Warnings* warnings) {
    const PumpEnvelope envelope(pump);
    const int rows = signal.size();
    const int cols = idler.size();
    Eigen::MatrixXcd amp(rows, cols);

    // Each worker fills a contiguous column block; every cell depends only on
    // its own (i, j), so the result does not depend on the split.
    const int n_workers = std::clamp(workers, 1, cols);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto fill = [&](int col_begin, int col_end) {
        try {
            for (int j = col_begin; j < col_end; ++j) {
                const double w_i = idler.at(j);
                for (int i = 0; i < rows; ++i) {
                    const double w_s = signal.at(i);
                    amp(i, j) = envelope(w_s + w_i) *
                                phasematching_function(crystal, w_s, w_i);
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    if (n_workers == 1) {
        fill(0, cols);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) {
            const int begin = static_cast<int>((static_cast<long>(cols) * w) / n_workers);
            const int end = static_cast<int>((static_cast<long>(cols) * (w + 1)) / n_workers);
            pool.emplace_back(fill, begin, end);
        }
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    // Boundary residual check: the grid should comfortably contain the
    // amplitude's support. sinc tails decay slowly, so this is a warning.
    double peak = 0.0;
    for (Eigen::Index k = 0; k < amp.size(); ++k)
        peak = std::max(peak, std::norm(amp.data()[k]));
    if (!(peak > 0.0))
        throw DomainError("jsa", "joint amplitude vanishes on the whole grid");
    double edge = 0.0;
    for (int i = 0; i < rows; ++i) {
        edge = std::max(edge, std::norm(amp(i, 0)));
        edge = std::max(edge, std::norm(amp(i, cols - 1)));
    }
    for (int j = 0; j < cols; ++j) {
        edge = std::max(edge, std::norm(amp(0, j)));
        edge = std::max(edge, std::norm(amp(rows - 1, j)));
    }
    if (edge / peak >= 1e-4)
        warn(warnings, "joint amplitude boundary intensity is " +
                           std::to_string(edge / peak) +
                           " of the peak; grid may truncate the state");

    return JsaGrid(signal, idler, std::move(amp)).normalized();
}

std::pair<SpectralAxis, SpectralAxis>
default_axes(const PumpSpec& pump, const QpmCrystal& crystal,
             double signal_center_wavelength, double idler_center_wavelength,
             int n_points, double span_fwhm) {
    if (n_points < 3)
        throw DomainError("jsa", "default axes need at least 3 points");
    if (!(span_fwhm > 0.0))
        throw DomainError("jsa", "span multiplier must be > 0");

    const double w_s0 = wavelength_to_omega(signal_center_wavelength).value();
    const double w_i0 = wavelength_to_omega(idler_center_wavelength).value();
    const double pump_fwhm = frequency_width_to_angular(pump.intensity_fwhm_hz);

    // Coarse probe, doubled until both marginals are bracketed by at least
    // span_fwhm of their own FWHM on each side.
    const int probe_points = 257;
    double half_span = span_fwhm * pump_fwhm;
    double fwhm_s = 0.0;
    double fwhm_i = 0.0;
    bool bracketed = false;
    for (int attempt = 0; attempt < 16; ++attempt) {
        const SpectralAxis probe_s(AngularFrequency(w_s0), 2.0 * half_span,
                                   probe_points);
        const SpectralAxis probe_i(AngularFrequency(w_i0), 2.0 * half_span,
                                   probe_points);
        const JsaGrid probe = build_jsa(pump, crystal, probe_s, probe_i);
        try {
            fwhm_s = intensity_marginal(probe, Arm::signal).intensity_fwhm();
            fwhm_i = intensity_marginal(probe, Arm::idler).intensity_fwhm();
        } catch (const DomainError&) {
            half_span *= 2.0; // half-maximum crossings not yet on the probe
            continue;
        }
        if (half_span >= span_fwhm * std::max(fwhm_s, fwhm_i)) {
            bracketed = true;
            break;
        }
        half_span *= 2.0;
    }
    if (!bracketed)
        throw DomainError("jsa", "could not bracket the joint amplitude "
                                 "support while sizing default axes");

    return {SpectralAxis(AngularFrequency(w_s0), 2.0 * span_fwhm * fwhm_s,
                         n_points),
            SpectralAxis(AngularFrequency(w_i0), 2.0 * span_fwhm * fwhm_i,
                         n_points)};
}

JsaGrid apply_filter(const JsaGrid& grid, const FilterSpec& filter,
                     Warnings* warnings) {
    const bool on_signal = filter.arm == Arm::signal;
    const SpectralAxis& axis = on_signal ? grid.signal_axis() : grid.idler_axis();

    const double w_c = filter.center_wavelength
                           ? wavelength_to_omega(*filter.center_wavelength).value()
                           : axis.center();
    if (!(filter.width > 0.0))
        throw DomainError("jsa", "filter width must be > 0");
    double width_hz = filter.width;
    if (filter.unit == WidthUnit::wavelength_m)
        width_hz = wavelength_width_to_frequency(
            filter.width, omega_to_wavelength(AngularFrequency(w_c)));
    const double width_angular = frequency_width_to_angular(width_hz);

    const SpectralProfile mask =
        filter.profile == ProfileShape::rect
            ? rect_profile(axis, AngularFrequency(w_c), width_angular)
            : gaussian_profile(axis, AngularFrequency(w_c), width_angular,
                               warnings);

    Eigen::MatrixXcd filtered = grid.amplitude();
    const auto m = mask.amplitude();
    if (on_signal) {
        for (int i = 0; i < grid.signal_axis().size(); ++i)
            filtered.row(i) *= m[i];
    } else {
        for (int j = 0; j < grid.idler_axis().size(); ++j)
            filtered.col(j) *= m[j];
    }

    JsaGrid out(grid.signal_axis(), grid.idler_axis(), std::move(filtered),
                grid.heralding_efficiency());
    const double before = grid.norm_squared();
    const double after = out.norm_squared();
    if (!(after > 0.0))
        throw DomainError("jsa", "filter removed all joint amplitude");
    const double ratio = after / before;
    return JsaGrid(grid.signal_axis(), grid.idler_axis(),
                   out.amplitude() / std::sqrt(after),
                   grid.heralding_efficiency() * ratio);
}

SpectralProfile intensity_marginal(const JsaGrid& grid, Arm arm) {
    const bool on_signal = arm == Arm::signal;
    const SpectralAxis& axis = on_signal ? grid.signal_axis() : grid.idler_axis();
    const double other_step =
        on_signal ? grid.idler_axis().step() : grid.signal_axis().step();
    std::vector<std::complex<double>> amp(axis.size());
    for (int k = 0; k < axis.size(); ++k) {
        double acc = 0.0;
        if (on_signal) {
            for (int j = 0; j < grid.idler_axis().size(); ++j)
                acc += std::norm(grid.amplitude()(k, j));
        } else {
            for (int i = 0; i < grid.signal_axis().size(); ++i)
                acc += std::norm(grid.amplitude()(i, k));
        }
        amp[k] = std::sqrt(acc * other_step);
    }
    return SpectralProfile(axis, std::move(amp));
}

double dfg_partner_wavelength(double pump_wavelength_m, double seed_wavelength_m) {
    if (!(pump_wavelength_m > 0.0) || !(seed_wavelength_m > 0.0))
        throw DomainError("jsa", "wavelengths must be > 0");
    if (!(seed_wavelength_m > pump_wavelength_m))
        throw DomainError("jsa", "seed must be redder than the pump for "
                                 "difference-frequency generation");
    return 1.0 / (1.0 / pump_wavelength_m - 1.0 / seed_wavelength_m);
}

} // namespace spdcsim
