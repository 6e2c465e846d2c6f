#pragma once

#include <stdexcept>
#include <string>

namespace dctpa {

/// Invalid input parameters or an inconsistent setup (bad grid, envelope
/// leaking off-grid, unresolvable mask, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Non-finite or otherwise broken numbers appearing during a computation.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dctpa
