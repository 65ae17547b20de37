#pragma once

#include <stdexcept>
#include <string>

namespace hypervec {

/// Bad command-line usage or bad API arguments. CLI exit code 1, tag E_USAGE.
class usage_error : public std::runtime_error {
public:
    explicit usage_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// File-system failures: missing files, bad magic, truncation. CLI exit code 2, tag E_IO.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Semantically invalid data: out-of-range vertices, duplicate edges,
/// dimension mismatches, fingerprint mismatches. CLI exit code 3, tag E_VALIDATION.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hypervec
