#include "modeset/spacings.hpp"

#include "modeset/error.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace modeset::spacings {

double lanke_lambda(std::size_t n, Probability alpha)
{
    if (n < 2) throw InfeasibleError("Lanke extension needs at least 2 observations");
    const double a = alpha.value();
    if (!(a > 0.0 && a < 1.0)) throw DomainError("alpha must lie strictly between 0 and 1");
    return std::expm1(-std::log(0.5 * a) / static_cast<double>(n - 1));
}

SpacingsPlan build_plan(std::size_t n, Probability alpha)
{
    const double a = alpha.value();
    if (!(a > 0.0 && a < 1.0)) throw DomainError("alpha must lie strictly between 0 and 1");

    const auto too_small = [n](int b_max) {
        std::ostringstream msg;
        msg << "sample too small for M1: n = " << n << " gives B_max = " << b_max
            << " < 0 (nested order-statistic method needs n >= 8 * 2^s_n)";
        return InfeasibleError(msg.str());
    };
    if (n < 8) throw too_small(static_cast<int>(std::bit_width(n)) - 4);

    SpacingsPlan plan;
    plan.n = n;
    plan.alpha = alpha;
    plan.s_n = static_cast<int>(std::ceil(std::log2(std::log(static_cast<double>(n)))));
    // floor(log2(n / 8)) = floor(log2 n) - 3 for integer n >= 8.
    const int floor_log2_n = static_cast<int>(std::bit_width(n)) - 1;
    plan.b_max = floor_log2_n - 3 - plan.s_n;
    if (plan.b_max < 0) throw too_small(plan.b_max);

    for (int b = 0; b <= plan.b_max; ++b) plan.t_n += 1.0 / (b + 2);

    for (int b = 0; b <= plan.b_max; ++b) {
        const std::size_t k = plan.block(b);
        const std::size_t blocks = (n - 1) / k;
        if (blocks < 1) throw too_small(plan.b_max);
        plan.n_b.push_back(blocks);
        const double level = a / (4.0 * (b + 2) * static_cast<double>(blocks) * plan.t_n);
        plan.level.push_back(level);
        const double shape_a = static_cast<double>(k);
        const double shape_b = static_cast<double>(n + 1 - k);
        const double upper = numerics::qbeta(1.0 - level, shape_a, shape_b);
        const double lower = numerics::qbeta(level, shape_a, shape_b);
        plan.h_b.push_back(upper / lower);
    }
    plan.lambda = lanke_lambda(n, alpha);
    return plan;
}

std::shared_ptr<const SpacingsPlan> cached_plan(std::size_t n, Probability alpha)
{
    static std::mutex mutex;
    static std::map<std::pair<std::size_t, double>, std::shared_ptr<const SpacingsPlan>> cache;

    const auto key = std::make_pair(n, alpha.value());
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto plan = std::make_shared<const SpacingsPlan>(build_plan(n, alpha));
    std::lock_guard lock(mutex);
    return cache.try_emplace(key, std::move(plan)).first->second;
}

LevelIntervals level_intervals(const SortedSample& sample, const SpacingsPlan& plan, int level_b)
{
    if (sample.size() != plan.n) throw DomainError("plan was built for a different sample size");
    if (level_b < 0 || level_b > plan.b_max) throw DomainError("level out of range");
    const auto x = sample.values();
    const std::size_t k = plan.block(level_b);
    LevelIntervals out{level_b, {}};
    out.intervals.reserve(plan.n_b[level_b]);
    for (std::size_t i = 1; i <= plan.n_b[level_b]; ++i) {
        out.intervals.push_back({x[(i - 1) * k], x[i * k]});
    }
    return out;
}

SpacingsTrace m1_trace(const SortedSample& sample, const SpacingsPlan& plan)
{
    if (sample.size() != plan.n) throw DomainError("plan was built for a different sample size");
    const auto x = sample.values();

    SpacingsTrace trace;
    std::size_t first = 1;
    std::size_t last = plan.n_b[plan.b_max];
    for (int b = plan.b_max; b >= 0; --b) {
        const std::size_t k = plan.block(b);
        if (b < plan.b_max) {
            // Level-b blocks wholly inside the surviving level-(b+1) run.
            first = 2 * first - 1;
            last = std::min(2 * last, plan.n_b[b]);
        }
        if (first > last) throw InfeasibleError("no candidate blocks left at a level");
        const auto width = [&](std::size_t i) { return x[i * k] - x[(i - 1) * k]; };

        std::size_t argmin = first;
        double w_min = width(first);
        for (std::size_t i = first + 1; i <= last; ++i) {
            if (const double w = width(i); w < w_min) {
                w_min = w;
                argmin = i;
            }
        }
        const double bound = plan.h_b[b] * w_min;
        std::size_t lo = argmin;
        while (lo > first && width(lo - 1) <= bound) --lo;
        std::size_t hi = argmin;
        while (hi < last && width(hi + 1) <= bound) ++hi;

        trace.runs.push_back({b, lo, hi, argmin});
        first = lo;
        last = hi;
    }

    const std::size_t k0 = plan.block(0);
    double lo = x[(first - 1) * k0];
    double hi = x[last * k0];
    const double spread = sample.range();
    trace.left_tail = first == 1;
    trace.right_tail = last == plan.n_b[0];
    if (trace.left_tail) lo = x.front() - plan.lambda * spread;
    // The right extension starts at X_(n); order statistics past the last
    // full block are absorbed so the result stays one interval.
    if (trace.right_tail) hi = x.back() + plan.lambda * spread;
    trace.interval = make_confidence_set({{lo, hi}});
    return trace;
}

ConfidenceSet m1_confidence_interval(const SortedSample& sample, const SpacingsPlan& plan)
{
    return m1_trace(sample, plan).interval;
}

ConfidenceSet m1_confidence_interval(const SortedSample& sample, Probability alpha)
{
    const auto plan = cached_plan(sample.size(), alpha);
    return m1_confidence_interval(sample, *plan);
}

} // namespace modeset::spacings
