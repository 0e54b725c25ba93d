#ifndef SPDCSIM_SHA256_HPP
#define SPDCSIM_SHA256_HPP

#include <string>
#include <string_view>

namespace spdcsim {

// Lowercase hex SHA-256 digest; used for output manifests.
std::string sha256_hex(std::string_view data);

} // namespace spdcsim

#endif
