#pragma once

// Confidence sets built from Edelman's single-observation inequality: for a
// unimodal law with mode theta0 and any fixed a,
//   P(X - (2/alpha - 1)|X - a| <= theta0 <= X + (2/alpha + 1)|X - a|) >= 1 - alpha.
// Inverting it gives the p-value p_i(theta) = 2 / (1 + |X_i - theta| / |X_i - pilot|)
// for each point of the evaluation half.

#include "modeset/confidence_set.hpp"
#include "modeset/numerics.hpp"
#include "modeset/sample.hpp"

#include <span>

namespace modeset::edelman {

/// [x - (2/alpha - 1)|x - a|, x + (2/alpha + 1)|x - a|].
ConfidenceSet edelman_single_interval(double x, double a, Probability alpha);

/// Per-observation p-value 2 / (1 + |(x - theta) / (x - pilot)|), in (0, 2].
double edelman_p_value(double x, double theta, double pilot);

/// Evaluation half and pilot for the Edelman statistics.
struct EdelmanStatistic {
    SortedSample points;
    double pilot = 0.0;
    double rho = 2.0;  ///< only used by the dependence-robust variant
};

/// Builds the statistic from a split of `data`. Throws InfeasibleError if any
/// evaluation point equals the pilot.
EdelmanStatistic make_statistic(std::span<const double> data, const SplitConfig& split);

/// Fisher statistic -2 sum log p_i(theta).
double fisher_statistic(const EdelmanStatistic& stat, double theta);

/// Markov statistic (1/n) ((rho - 1)/(rho + 1)) sum |(X_i - theta)/(X_i - pilot)|^(1/rho).
double markov_statistic(const EdelmanStatistic& stat, double theta);

/// {theta : fisher_statistic < qchisq(1 - alpha, 2n)} for a prepared statistic.
ConfidenceSet fisher_set(const EdelmanStatistic& stat, Probability alpha);

/// {theta : markov_statistic < 1 / alpha} for a prepared statistic.
ConfidenceSet markov_set(const EdelmanStatistic& stat, Probability alpha);

struct EdelmanResult {
    ConfidenceSet set;
    double pilot = 0.0;
};

/// Fisher combination of the Edelman p-values over the evaluation half.
EdelmanResult m3_confidence_set(std::span<const double> data, Probability alpha,
                                const SplitConfig& split = {});

/// Markov-bound variant valid under arbitrary dependence between
/// observations. Requires rho > 1.
EdelmanResult m3prime_confidence_set(std::span<const double> data, Probability alpha,
                                     double rho, const SplitConfig& split = {});

} // namespace modeset::edelman
