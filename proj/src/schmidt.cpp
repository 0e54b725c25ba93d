#include "spdcsim/schmidt.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace spdcsim {

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> coefficients)
    : c_(std::move(coefficients)) {
    if (c_.empty())
        throw DomainError("schmidt", "empty coefficient list");
    double sum2 = 0.0;
    double sum4 = 0.0;
    for (std::size_t n = 0; n < c_.size(); ++n) {
        const double c = c_[n];
        if (!std::isfinite(c) || c < 0.0)
            throw DomainError("schmidt", "coefficients must be finite and >= 0");
        if (n > 0 && c > c_[n - 1])
            throw DomainError("schmidt", "coefficients must be descending");
        sum2 += c * c;
        sum4 += c * c * c * c;
    }
    if (!(sum4 > 0.0))
        throw DomainError("schmidt", "all coefficients vanish");
    residual_ = 1.0 - sum2;
    schmidt_number_ = sum2 * sum2 / sum4;
}

SchmidtSpectrum schmidt_decompose(const JsaGrid& grid) {
    const Eigen::MatrixXcd& amp = grid.amplitude();

    // Rows/columns that are identically zero (hard-edged filters) carry no
    // weight; dropping them leaves the singular values unchanged and keeps
    // the decomposition cheap for narrow filters.
    std::vector<int> rows;
    std::vector<int> cols;
    for (int i = 0; i < amp.rows(); ++i)
        if ((amp.row(i).array() != std::complex<double>(0.0)).any())
            rows.push_back(i);
    for (int j = 0; j < amp.cols(); ++j)
        if ((amp.col(j).array() != std::complex<double>(0.0)).any())
            cols.push_back(j);
    if (rows.empty() || cols.empty())
        throw DomainError("schmidt", "joint amplitude is identically zero");

    Eigen::MatrixXcd compact(rows.size(), cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b)
            compact(a, b) = amp(rows[a], cols[b]);
    compact *= std::sqrt(grid.cell_area());

    Eigen::VectorXd sv;
    if (compact.imag().cwiseAbs().maxCoeff() == 0.0) {
        // Real amplitude (real pump and phase-matching profiles): the real
        // decomposition is several times faster at equal results.
        Eigen::MatrixXd real_compact = compact.real();
        sv = Eigen::BDCSVD<Eigen::MatrixXd>(real_compact).singularValues();
    } else {
        sv = Eigen::BDCSVD<Eigen::MatrixXcd>(compact).singularValues();
    }

    std::vector<double> c(sv.data(), sv.data() + sv.size());
    return SchmidtSpectrum(std::move(c));
}

double purity_via_trace(const JsaGrid& grid) {
    // rho_signal = M M^dagger with M the cell-area-scaled amplitude;
    // Tr(rho^2) is the squared Frobenius norm of the Hermitian rho.
    const Eigen::MatrixXcd m = grid.amplitude() * std::sqrt(grid.cell_area());
    const Eigen::MatrixXcd rho = m * m.adjoint();
    const double norm2 = m.squaredNorm();
    if (!(norm2 > 0.0))
        throw DomainError("schmidt", "joint amplitude is identically zero");
    return rho.squaredNorm() / (norm2 * norm2);
}

double g2_from_purity(double purity) {
    if (!(purity > 0.0) || purity > 1.0 + 1e-9)
        throw DomainError("schmidt", "purity must lie in (0, 1]");
    return 1.0 + purity;
}

double purity_from_g2(double g2) {
    if (g2 < 1.0 || g2 > 2.0 + 1e-9)
        throw DomainError("schmidt", "unconditioned g2(0) must lie in [1, 2]");
    return g2 - 1.0;
}

std::vector<FilterSweepPoint>
purity_vs_filter_sweep(const JsaGrid& base, const FilterSpec& filter_template,
                       std::span<const double> widths, int workers) {
    if (widths.empty())
        throw DomainError("schmidt", "empty width list");

    // Width conversions are defined at the filter centre.
    const SpectralAxis& axis = filter_template.arm == Arm::signal
                                   ? base.signal_axis()
                                   : base.idler_axis();
    const double center_wl =
        filter_template.center_wavelength
            ? *filter_template.center_wavelength
            : omega_to_wavelength(AngularFrequency(axis.center()));

    std::vector<FilterSweepPoint> points(widths.size());
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run_point = [&](std::size_t k) {
        const double w = widths[k];
        FilterSpec f = filter_template;
        f.width = w;
        const JsaGrid filtered = apply_filter(base, f);
        const SchmidtSpectrum spectrum = schmidt_decompose(filtered);
        FilterSweepPoint p;
        p.width_value = w;
        if (filter_template.unit == WidthUnit::wavelength_m) {
            p.width_nm = w * 1e9;
            p.width_ghz = wavelength_width_to_frequency(w, center_wl) / 1e9;
        } else {
            p.width_ghz = w / 1e9;
            p.width_nm = frequency_width_to_wavelength(w, center_wl) * 1e9;
        }
        p.purity = spectrum.purity();
        p.schmidt_number = spectrum.schmidt_number();
        p.heralding_efficiency = filtered.heralding_efficiency();
        points[k] = p;
    };

    const int n_workers =
        std::clamp<int>(workers, 1, static_cast<int>(widths.size()));
    auto run_range = [&](std::size_t begin, std::size_t end) {
        try {
            for (std::size_t k = begin; k < end; ++k) run_point(k);
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    if (n_workers == 1) {
        run_range(0, widths.size());
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) {
            const std::size_t begin = widths.size() * w / n_workers;
            const std::size_t end = widths.size() * (w + 1) / n_workers;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return points;
}

} // namespace spdcsim
