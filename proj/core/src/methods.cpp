#include "modeset/methods.hpp"

#include "modeset/edelman.hpp"
#include "modeset/error.hpp"
#include "modeset/mest.hpp"
#include "modeset/spacings.hpp"

#include <string>

namespace modeset {

std::string_view method_name(Method m) noexcept
{
    switch (m) {
    case Method::m1: return "m1";
    case Method::m2: return "m2";
    case Method::m2a: return "m2a";
    case Method::m3: return "m3";
    case Method::m3p: return "m3p";
    }
    return "unknown";
}

Method parse_method(std::string_view name)
{
    for (Method m : {Method::m1, Method::m2, Method::m2a, Method::m3, Method::m3p}) {
        if (method_name(m) == name) return m;
    }
    throw DomainError("unknown method '" + std::string(name) + "' (expected m1, m2, m2a, m3 or m3p)");
}

bool uses_split(Method m) noexcept
{
    return m != Method::m1;
}

MethodOutcome run_method(Method method, std::span<const double> data, Probability alpha,
                         const MethodConfig& cfg)
{
    switch (method) {
    case Method::m1: {
        const SortedSample sample(std::vector<double>(data.begin(), data.end()));
        return {spacings::m1_confidence_interval(sample, alpha), false};
    }
    case Method::m2:
    case Method::m2a: {
        mest::MEstConfig mc{alpha, cfg.h, cfg.h_grid, cfg.split};
        auto r = method == Method::m2 ? mest::m2_confidence_set(data, mc)
                                      : mest::m2_adaptive_confidence_set(data, mc);
        return {std::move(r.set), r.vacuous};
    }
    case Method::m3:
        return {edelman::m3_confidence_set(data, alpha, cfg.split).set, false};
    case Method::m3p:
        return {edelman::m3prime_confidence_set(data, alpha, cfg.rho, cfg.split).set, false};
    }
    throw DomainError("unknown method");
}

} // namespace modeset
