#pragma once

#include <stdexcept>
#include <string>

namespace modeset {

// Invalid argument or malformed input: a caller-side contract violation.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Valid inputs on which a method cannot be carried out (sample too small,
// a p-value with zero denominator, an empty split half, ...).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace modeset
