#ifndef SPDCSIM_TEXTIO_HPP
#define SPDCSIM_TEXTIO_HPP

#include <filesystem>
#include <string>

namespace spdcsim {

// 17 significant digits ("%.17g"): round-trips any double exactly, so CSV
// output is bit-stable across runs.
std::string format_sig17(double v);

// Whole-file text helpers; files are written in binary mode so line endings
// are exactly what the caller produced (LF). Throw IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

} // namespace spdcsim

#endif
