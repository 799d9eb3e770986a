#pragma once

#include <stdexcept>
#include <string>

namespace mechsketch {

/// Bad user input: missing/garbled files, invalid configuration. CLI exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numeric failure during computation (non-finite loss, etc.). CLI exit code 3.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mechsketch
