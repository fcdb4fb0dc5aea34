#pragma once

#include <stdexcept>
#include <string>

namespace lesionseg {

/// Base class for recoverable library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// File I/O failure, tagged so callers can tell a missing file from a
/// corrupt or unsupported one.
class IoError : public Error {
public:
    enum class Kind { Unreadable, UnsupportedFormat, Corrupt, Unwritable };

    IoError(Kind k, const std::string& msg) : Error(msg), kind(k) {}

    Kind kind;
};

/// A pipeline found nothing that could be a lesion in the input.
class NoLesionError : public Error {
public:
    explicit NoLesionError(const std::string& msg = "no lesion candidate found")
        : Error(msg) {}
};

/// Bad key, value or syntax in a config file or --set override.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace lesionseg
