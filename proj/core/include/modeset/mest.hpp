#pragma once

// Confidence sets for the mode from the M-estimation view: the mode of the
// data smoothed by Uniform[-h, h] maximises the window count
// N(theta) = #{i : theta - h < X_i <= theta + h}, and every theta whose count
// is within a concentration slack of the pilot's count is retained. Dilating
// that set by h covers the mode itself.

#include "modeset/confidence_set.hpp"
#include "modeset/numerics.hpp"
#include "modeset/sample.hpp"

#include <optional>
#include <span>
#include <vector>

namespace modeset::mest {

struct MEstConfig {
    Probability alpha{0.05};
    double h = 0.0;                ///< bandwidth for the fixed-h set
    /// Candidate bandwidths for the adaptive set; unset selects default_h_grid.
    std::optional<std::vector<double>> h_grid;
    SplitConfig split{};
};

/// Right-continuous piecewise-constant window count. counts[k] is N on
/// [breakpoints[k], breakpoints[k + 1]); N is 0 before the first breakpoint
/// and after the last.
struct WindowStatistic {
    std::vector<double> breakpoints;
    std::vector<int> counts;
    double h = 0.0;

    [[nodiscard]] int at(double theta) const;
};

/// Sweep of the events X_i - h (+1) and X_i + h (-1); coincident breakpoints
/// are collapsed.
WindowStatistic window_statistic(std::span<const double> points, double h);

/// Slack for the fixed-h set: sqrt(6 n) (sqrt(log(1 / alpha)) + 2).
/// This is 2 h n times the threshold (1/h) sqrt(3 / (2n)) [sqrt(log(1/alpha)) + 2].
double hoeffding_count_slack(std::size_t n, Probability alpha);

/// Slack for the bandwidth-adaptive set, valid simultaneously over h:
/// 2 sqrt(2 n log(2 / alpha)).
double dkw_count_slack(std::size_t n, Probability alpha);

struct LevelSet {
    ConfidenceSet set;   ///< before dilation
    bool vacuous = false;
    int pilot_count = 0;
};

/// {theta : N(theta) >= N(pilot) - slack}, read exactly off the window
/// statistic. When no theta is excluded, the set is clamped to the
/// breakpoint hull and flagged vacuous.
LevelSet level_set(const WindowStatistic& stat, double pilot, double slack);

struct MEstResult {
    ConfidenceSet set;   ///< after dilation by h
    double h = 0.0;
    double pilot = 0.0;
    bool vacuous = false;
};

/// Fixed-bandwidth set. Throws InfeasibleError when the data cannot be split
/// into two halves with a feasible pilot, DomainError on h <= 0.
MEstResult m2_confidence_set(std::span<const double> data, const MEstConfig& cfg);

/// Width-minimising bandwidth over cfg.h_grid (ties to the smallest h), with
/// the DKW slack.
MEstResult m2_adaptive_confidence_set(std::span<const double> data, const MEstConfig& cfg);

/// 64 geometric points from half the smallest positive gap of `points` to
/// their range. Throws InfeasibleError when all points coincide.
std::vector<double> default_h_grid(std::span<const double> points, std::size_t size = 64);

/// Geometric grid of `size` points on [lo, hi].
std::vector<double> geometric_grid(double lo, double hi, std::size_t size);

} // namespace modeset::mest
