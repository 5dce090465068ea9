#pragma once

// Nested order-statistic confidence interval for the mode.
//
// The sample is cut into consecutive blocks of 2^(B + s_n) spacings at each
// level B. Starting from the coarsest level, the shortest block and the
// maximal run of neighbours no wider than h_B times it survive; the next level
// only considers blocks lying inside the survivors. The finest survivors form
// the interval, widened by Lanke's tail bound when they touch a sample extreme.

#include "modeset/confidence_set.hpp"
#include "modeset/numerics.hpp"
#include "modeset/sample.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace modeset::spacings {

struct SpacingsPlan {
    std::size_t n = 0;
    Probability alpha;
    int s_n = 0;                      ///< ceil(log2(ln n))
    int b_max = 0;                    ///< floor(log2(n / 8)) - s_n
    std::vector<std::size_t> n_b;     ///< blocks per level, floor((n - 1) / 2^(B + s_n))
    double t_n = 0.0;                 ///< sum_{B=0}^{b_max} 1 / (B + 2)
    std::vector<double> level;        ///< per-level tail probability alpha / (4 (B + 2) n_B t_n)
    std::vector<double> h_b;          ///< per-level width ratio bound (>= 1)
    double lambda = 0.0;              ///< (alpha / 2)^(-1 / (n - 1)) - 1

    /// Number of spacings per block at level B: 2^(B + s_n).
    [[nodiscard]] std::size_t block(int level_b) const noexcept
    {
        return std::size_t{1} << (level_b + s_n);
    }
};

/// Lanke's tail factor (alpha / 2)^(-1 / (n - 1)) - 1. Requires n >= 2.
double lanke_lambda(std::size_t n, Probability alpha);

/// Throws InfeasibleError("sample too small for M1 ...") when b_max < 0 and
/// DomainError for alpha outside (0, 1).
SpacingsPlan build_plan(std::size_t n, Probability alpha);

/// Cached, shared, read-only plan for (n, alpha). Thread-safe.
std::shared_ptr<const SpacingsPlan> cached_plan(std::size_t n, Probability alpha);

/// The level-B blocks I_Bi = [X_(1 + (i-1) k), X_(1 + i k)], k = 2^(B + s_n).
struct LevelIntervals {
    int level = 0;
    std::vector<Interval> intervals;
};

LevelIntervals level_intervals(const SortedSample& sample, const SpacingsPlan& plan, int level_b);

/// Surviving run at one level, as one-based block indices [first, last].
struct LevelRun {
    int level = 0;
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t argmin = 0;
};

/// Full trace of the descent, coarsest level first.
struct SpacingsTrace {
    std::vector<LevelRun> runs;
    bool left_tail = false;   ///< I_01 survived: prepend the left Lanke extension
    bool right_tail = false;  ///< I_0n0 survived: append the right Lanke extension
    ConfidenceSet interval;
};

SpacingsTrace m1_trace(const SortedSample& sample, const SpacingsPlan& plan);

/// The confidence interval; always exactly one closed interval.
ConfidenceSet m1_confidence_interval(const SortedSample& sample, Probability alpha);
ConfidenceSet m1_confidence_interval(const SortedSample& sample, const SpacingsPlan& plan);

} // namespace modeset::spacings
