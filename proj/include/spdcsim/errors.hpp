#ifndef SPDCSIM_ERRORS_HPP
#define SPDCSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spdcsim {

// Physical/domain precondition violated (non-physical parameter, singular
// input, value outside a model's validity window, ...).
class DomainError : public std::runtime_error {
public:
    DomainError(std::string component, const std::string& message)
        : std::runtime_error(component + ": " + message),
          component_(std::move(component)) {}

    const std::string& component() const noexcept { return component_; }

private:
    std::string component_;
};

// Scenario text could not be parsed or failed validation.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& message)
        : std::runtime_error(message), line_(0) {}
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

// Filesystem / output failure.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

} // namespace spdcsim

#endif
