#pragma once

#include "modeset/confidence_set.hpp"

#include <string>
#include <string_view>

namespace modeset {

/// {"intervals": [[lo, hi], ...], "width": w, "alpha": a, "method": name}.
/// Infinite endpoints and widths are written as null.
std::string to_json(const ConfidenceSet& set, double alpha, std::string_view method);

struct SerializedSet {
    ConfidenceSet set;
    double alpha = 0.0;
    std::string method;
};

/// Inverse of to_json; null lower ends read as -inf, null upper ends as +inf.
/// Throws DomainError on malformed input.
SerializedSet from_json(std::string_view text);

} // namespace modeset
