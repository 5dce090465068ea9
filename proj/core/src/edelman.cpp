#include "modeset/edelman.hpp"

#include "modeset/error.hpp"
#include "modeset/sublevel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace modeset::edelman {
namespace {

void check_alpha(Probability alpha)
{
    if (!(alpha.value() > 0.0 && alpha.value() < 1.0)) {
        throw DomainError("alpha must lie strictly between 0 and 1");
    }
}

void check_rho(double rho)
{
    if (!(rho > 1.0) || !std::isfinite(rho)) {
        std::ostringstream msg;
        msg << "rho must exceed 1, got " << rho;
        throw DomainError(msg.str());
    }
}

std::vector<double> scales(const EdelmanStatistic& stat)
{
    std::vector<double> d;
    d.reserve(stat.points.size());
    for (double x : stat.points.values()) d.push_back(std::fabs(x - stat.pilot));
    return d;
}

} // namespace

ConfidenceSet edelman_single_interval(double x, double a, Probability alpha)
{
    check_alpha(alpha);
    const double spread = std::fabs(x - a);
    const double inv = 2.0 / alpha.value();
    return make_confidence_set({{x - (inv - 1.0) * spread, x + (inv + 1.0) * spread}});
}

double edelman_p_value(double x, double theta, double pilot)
{
    const double d = std::fabs(x - pilot);
    if (d == 0.0) throw InfeasibleError("Edelman p-value undefined: observation equals the pilot");
    return 2.0 / (1.0 + std::fabs(x - theta) / d);
}

EdelmanStatistic make_statistic(std::span<const double> data, const SplitConfig& split)
{
    if (data.size() < 4) {
        std::ostringstream msg;
        msg << "Edelman sets need at least 4 observations, got " << data.size();
        throw InfeasibleError(msg.str());
    }
    auto halves = split_sample(data, split.stream, split.fraction);
    const std::size_t r = split.pilot_r ? *split.pilot_r : default_venter_window(halves.s1.size());
    const double pilot = venter_pilot(halves.s1, r);
    for (double x : halves.s2.values()) {
        if (x == pilot) {
            throw InfeasibleError(
                "an evaluation observation equals the pilot estimate (duplicate values); "
                "Edelman p-values are undefined");
        }
    }
    return {std::move(halves.s2), pilot, 2.0};
}

double fisher_statistic(const EdelmanStatistic& stat, double theta)
{
    double total = 0.0;
    for (double x : stat.points.values()) total -= 2.0 * std::log(edelman_p_value(x, theta, stat.pilot));
    return total;
}

double markov_statistic(const EdelmanStatistic& stat, double theta)
{
    check_rho(stat.rho);
    double total = 0.0;
    for (double x : stat.points.values()) {
        const double d = std::fabs(x - stat.pilot);
        if (d == 0.0) throw InfeasibleError("observation equals the pilot estimate");
        total += std::pow(std::fabs(x - theta) / d, 1.0 / stat.rho);
    }
    const double n = static_cast<double>(stat.points.size());
    return (stat.rho - 1.0) / (stat.rho + 1.0) * total / n;
}

ConfidenceSet fisher_set(const EdelmanStatistic& stat, Probability alpha)
{
    check_alpha(alpha);
    const auto d = scales(stat);
    for (double di : d) {
        if (di == 0.0) throw InfeasibleError("observation equals the pilot estimate");
    }
    const std::size_t n = d.size();
    // -2 log p_i = 2 log1p(|x_i - theta| / d_i) - 2 log 2; the constant moves
    // into the cutoff so each term is concave and monotone between points.
    const double cutoff = numerics::qchisq(1.0 - alpha.value(), 2.0 * static_cast<double>(n))
                        + 2.0 * static_cast<double>(n) * std::numbers::ln2;
    const auto x = stat.points.values();
    const auto term = [x, &d](std::size_t i, double theta) {
        return 2.0 * std::log1p(std::fabs(x[i] - theta) / d[i]);
    };
    const detail::SeparableStatistic<decltype(term)> fn(x, term);
    return detail::strict_sublevel_set(fn, cutoff);
}

ConfidenceSet markov_set(const EdelmanStatistic& stat, Probability alpha)
{
    check_alpha(alpha);
    check_rho(stat.rho);
    const auto d = scales(stat);
    for (double di : d) {
        if (di == 0.0) throw InfeasibleError("observation equals the pilot estimate");
    }
    const double n = static_cast<double>(d.size());
    const double inv_rho = 1.0 / stat.rho;
    // Scale so the cutoff is (1/alpha) n (rho + 1)/(rho - 1) on the raw sum.
    const double cutoff = n * (stat.rho + 1.0) / (stat.rho - 1.0) / alpha.value();
    const auto x = stat.points.values();
    const auto term = [x, &d, inv_rho](std::size_t i, double theta) {
        return std::pow(std::fabs(x[i] - theta) / d[i], inv_rho);
    };
    const detail::SeparableStatistic<decltype(term)> fn(x, term);
    return detail::strict_sublevel_set(fn, cutoff);
}

EdelmanResult m3_confidence_set(std::span<const double> data, Probability alpha,
                                const SplitConfig& split)
{
    check_alpha(alpha);
    const auto stat = make_statistic(data, split);
    return {fisher_set(stat, alpha), stat.pilot};
}

EdelmanResult m3prime_confidence_set(std::span<const double> data, Probability alpha,
                                     double rho, const SplitConfig& split)
{
    check_alpha(alpha);
    check_rho(rho);
    auto stat = make_statistic(data, split);
    stat.rho = rho;
    return {markov_set(stat, alpha), stat.pilot};
}

} // namespace modeset::edelman
