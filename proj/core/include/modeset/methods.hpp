#pragma once

// Uniform entry point over the univariate methods, used by the multivariate
// lift, the simulation engine and the command-line tool.

#include "modeset/confidence_set.hpp"
#include "modeset/numerics.hpp"
#include "modeset/sample.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace modeset {

enum class Method {
    m1,   ///< nested order-statistic spacings
    m2,   ///< M-estimation, fixed bandwidth
    m2a,  ///< M-estimation, width-minimising bandwidth
    m3,   ///< Fisher combination of Edelman p-values
    m3p,  ///< Markov bound on Edelman ratios, dependence-robust
};

std::string_view method_name(Method m) noexcept;
/// Parses "m1", "m2", "m2a", "m3", "m3p"; throws DomainError otherwise.
Method parse_method(std::string_view name);
/// True for the methods that split the sample.
bool uses_split(Method m) noexcept;

struct MethodConfig {
    double h = 0.0;                               ///< m2 bandwidth
    std::optional<std::vector<double>> h_grid{};  ///< m2a grid; unset = default
    double rho = 2.0;                             ///< m3p exponent
    SplitConfig split{};
};

struct MethodOutcome {
    ConfidenceSet set;
    bool vacuous = false;  ///< m2/m2a: threshold excluded nothing
};

MethodOutcome run_method(Method method, std::span<const double> data, Probability alpha,
                         const MethodConfig& cfg);

} // namespace modeset
