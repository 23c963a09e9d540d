#pragma once

#include <stdexcept>
#include <string>

namespace reco {

// Bad or inconsistent configuration. CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A runtime contract was broken (duplicate slate items, engagement without
// impression, NaN loss, ...). CLI maps this to exit code 3.
struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

} // namespace reco
