#pragma once

#include <stdexcept>
#include <string>

namespace morse_persist {

// Bad pipeline/CLI configuration (unparsable expression, degenerate box,
// inverted depth range).  CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input data (point outside the box, series too short, map whose
// enclosure escapes the box).  CLI exit code 3.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// A library invariant failed; indicates a bug, not bad input.
// CLI exit code 4.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

namespace detail {
inline void require(bool cond, const std::string& msg) {
    if (!cond) throw InternalError(msg);
}
}  // namespace detail

}  // namespace morse_persist
