#pragma once

#include <stdexcept>
#include <string>

namespace solis {

// Base for all pipeline errors. Subclasses map onto CLI exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed configs, manifests, or arguments (CLI exit code 2).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// No vessel detection above threshold (CLI exit code 3 when all inputs fail).
class VialNotFoundError : public Error {
public:
    explicit VialNotFoundError(const std::string& msg) : Error(msg) {}
};

// Filesystem / encoding failures (CLI exit code 4).
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace solis
