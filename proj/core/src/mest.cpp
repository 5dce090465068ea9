#include "modeset/mest.hpp"

#include "modeset/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace modeset::mest {
namespace {

void check_bandwidth(double h)
{
    if (!(h > 0.0) || !std::isfinite(h)) {
        std::ostringstream msg;
        msg << "bandwidth h must be positive and finite, got " << h;
        throw DomainError(msg.str());
    }
}

struct Prepared {
    SortedSample s2;
    double pilot;
};

Prepared prepare(std::span<const double> data, const SplitConfig& split)
{
    if (data.size() < 4) {
        std::ostringstream msg;
        msg << "M-estimation sets need at least 4 observations, got " << data.size();
        throw InfeasibleError(msg.str());
    }
    auto halves = split_sample(data, split.stream, split.fraction);
    const std::size_t r = split.pilot_r ? *split.pilot_r : default_venter_window(halves.s1.size());
    const double pilot = venter_pilot(halves.s1, r);
    return {std::move(halves.s2), pilot};
}

MEstResult fixed_h(const SortedSample& s2, double pilot, double h, double slack)
{
    const auto stat = window_statistic(s2.values(), h);
    auto ls = level_set(stat, pilot, slack);
    return {dilate(ls.set, h), h, pilot, ls.vacuous};
}

} // namespace

int WindowStatistic::at(double theta) const
{
    // Last breakpoint <= theta.
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), theta);
    if (it == breakpoints.begin()) return 0;
    return counts[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

WindowStatistic window_statistic(std::span<const double> points, double h)
{
    check_bandwidth(h);
    std::vector<std::pair<double, int>> events;
    events.reserve(2 * points.size());
    for (double x : points) {
        events.emplace_back(x - h, +1);
        events.emplace_back(x + h, -1);
    }
    std::sort(events.begin(), events.end());

    WindowStatistic stat;
    stat.h = h;
    int running = 0;
    for (std::size_t i = 0; i < events.size();) {
        const double at = events[i].first;
        while (i < events.size() && events[i].first == at) running += events[i++].second;
        stat.breakpoints.push_back(at);
        stat.counts.push_back(running);
    }
    return stat;
}

double hoeffding_count_slack(std::size_t n, Probability alpha)
{
    return std::sqrt(6.0 * static_cast<double>(n))
         * (std::sqrt(std::log(1.0 / alpha.value())) + 2.0);
}

double dkw_count_slack(std::size_t n, Probability alpha)
{
    return 2.0 * std::sqrt(2.0 * static_cast<double>(n) * std::log(2.0 / alpha.value()));
}

LevelSet level_set(const WindowStatistic& stat, double pilot, double slack)
{
    LevelSet out;
    out.pilot_count = stat.at(pilot);
    if (stat.breakpoints.empty()) return out;
    const double threshold = static_cast<double>(out.pilot_count) - slack;
    if (threshold <= 0.0) {
        out.vacuous = true;
        out.set = make_confidence_set({{stat.breakpoints.front(), stat.breakpoints.back()}});
        return out;
    }
    std::vector<Interval> kept;
    // The count after the last breakpoint is 0 < threshold, so only the
    // bounded segments can qualify.
    for (std::size_t k = 0; k + 1 < stat.breakpoints.size(); ++k) {
        if (static_cast<double>(stat.counts[k]) >= threshold) {
            kept.push_back({stat.breakpoints[k], stat.breakpoints[k + 1]});
        }
    }
    out.set = make_confidence_set(std::move(kept));
    return out;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t size)
{
    if (!(lo > 0.0) || !(hi >= lo) || size == 0) throw DomainError("invalid geometric grid");
    if (size == 1) return {lo};
    std::vector<double> grid(size);
    const double step = std::log(hi / lo) / static_cast<double>(size - 1);
    for (std::size_t i = 0; i < size; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
    grid.back() = hi;
    return grid;
}

std::vector<double> default_h_grid(std::span<const double> points, std::size_t size)
{
    std::vector<double> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const double gap = sorted[i] - sorted[i - 1];
        if (gap > 0.0) min_gap = std::min(min_gap, gap);
    }
    if (!std::isfinite(min_gap)) throw InfeasibleError("bandwidth grid needs two distinct observations");
    const double range = sorted.back() - sorted.front();
    return geometric_grid(0.5 * min_gap, range, size);
}

MEstResult m2_confidence_set(std::span<const double> data, const MEstConfig& cfg)
{
    check_bandwidth(cfg.h);
    const auto prep = prepare(data, cfg.split);
    const double slack = hoeffding_count_slack(prep.s2.size(), cfg.alpha);
    return fixed_h(prep.s2, prep.pilot, cfg.h, slack);
}

MEstResult m2_adaptive_confidence_set(std::span<const double> data, const MEstConfig& cfg)
{
    if (cfg.h_grid) {
        const auto& g = *cfg.h_grid;
        if (g.empty()) throw DomainError("bandwidth grid must not be empty");
        for (std::size_t i = 0; i < g.size(); ++i) {
            check_bandwidth(g[i]);
            if (i > 0 && !(g[i] > g[i - 1])) {
                throw DomainError("bandwidth grid must be strictly ascending");
            }
        }
    }
    const auto prep = prepare(data, cfg.split);
    const auto grid = cfg.h_grid ? *cfg.h_grid : default_h_grid(prep.s2.values());
    const double slack = dkw_count_slack(prep.s2.size(), cfg.alpha);

    MEstResult best;
    double best_width = std::numeric_limits<double>::infinity();
    for (double h : grid) {
        auto candidate = fixed_h(prep.s2, prep.pilot, h, slack);
        const double w = candidate.set.width();
        if (w < best_width) {
            best_width = w;
            best = std::move(candidate);
        }
    }
    return best;
}

} // namespace modeset::mest
