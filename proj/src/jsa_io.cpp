#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "spdcsim/jsa.hpp"
#include "spdcsim/textio.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary joint-amplitude format assumes a little-endian host");

namespace spdcsim {

std::string format_sig17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read from '" + path.string() + "' failed");
    return text;
}

void write_jsa_csv(const JsaGrid& grid, const std::filesystem::path& path) {
    std::string out = "omega_s,omega_i,re,im\n";
    out.reserve(out.size() +
                static_cast<std::size_t>(grid.amplitude().size()) * 80);
    for (int i = 0; i < grid.signal_axis().size(); ++i) {
        const std::string w_s = format_sig17(grid.signal_axis().at(i));
        for (int j = 0; j < grid.idler_axis().size(); ++j) {
            const std::complex<double> s = grid.amplitude()(i, j);
            out += w_s;
            out += ',';
            out += format_sig17(grid.idler_axis().at(j));
            out += ',';
            out += format_sig17(s.real());
            out += ',';
            out += format_sig17(s.imag());
            out += '\n';
        }
    }
    write_text_file(path, out);
}

namespace {

struct AxisHeader {
    double center;
    double span;
    std::uint64_t n_points;
};

void put_axis(std::ofstream& out, const SpectralAxis& axis) {
    const AxisHeader h{axis.center(), axis.span(),
                       static_cast<std::uint64_t>(axis.size())};
    out.write(reinterpret_cast<const char*>(&h.center), 8);
    out.write(reinterpret_cast<const char*>(&h.span), 8);
    out.write(reinterpret_cast<const char*>(&h.n_points), 8);
}

SpectralAxis get_axis(std::ifstream& in, const std::filesystem::path& path) {
    AxisHeader h{};
    in.read(reinterpret_cast<char*>(&h.center), 8);
    in.read(reinterpret_cast<char*>(&h.span), 8);
    in.read(reinterpret_cast<char*>(&h.n_points), 8);
    if (!in) throw IoError("truncated axis header in '" + path.string() + "'");
    if (h.n_points < 3 || h.n_points > (1u << 20))
        throw IoError("implausible axis length in '" + path.string() + "'");
    return SpectralAxis(AngularFrequency(h.center), h.span,
                        static_cast<int>(h.n_points));
}

} // namespace

void write_jsa_binary(const JsaGrid& grid, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    put_axis(out, grid.signal_axis());
    put_axis(out, grid.idler_axis());
    for (int i = 0; i < grid.signal_axis().size(); ++i) {
        for (int j = 0; j < grid.idler_axis().size(); ++j) {
            const std::complex<double> s = grid.amplitude()(i, j);
            const double pair[2] = {s.real(), s.imag()};
            out.write(reinterpret_cast<const char*>(pair), 16);
        }
    }
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

JsaGrid read_jsa_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    const SpectralAxis signal = get_axis(in, path);
    const SpectralAxis idler = get_axis(in, path);
    Eigen::MatrixXcd amp(signal.size(), idler.size());
    for (int i = 0; i < signal.size(); ++i) {
        for (int j = 0; j < idler.size(); ++j) {
            double pair[2];
            in.read(reinterpret_cast<char*>(pair), 16);
            amp(i, j) = std::complex<double>(pair[0], pair[1]);
        }
    }
    if (!in) throw IoError("truncated payload in '" + path.string() + "'");
    return JsaGrid(signal, idler, std::move(amp));
}

} // namespace spdcsim
