#pragma once

#include <stdexcept>
#include <string>

namespace llr {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input data (bad JSON line, bad TSV row, unreadable file).
/// Messages carry the file path and 1-based line number where applicable.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Structurally valid data that violates a corpus invariant
/// (duplicate id, dangling judgment reference, empty lesson text).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration: unknown config id, k < 1, fewer than two
/// fusion members, malformed topper sets.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace llr
