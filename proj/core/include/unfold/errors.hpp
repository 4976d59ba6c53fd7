#pragma once

#include <stdexcept>
#include <string>

namespace unfold {

/// Caller misuse: bad argument values, mismatched dimensions, invalid config.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed input data (CSV parse failures carry row/column locations).
class IngestError : public std::runtime_error {
public:
    explicit IngestError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failures: missing files, unwritable directories.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace unfold
