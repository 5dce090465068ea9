#pragma once

#include "modeset/rng.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace modeset {

/// Finite observations in ascending order, with the caller's original order
/// kept alongside for reproducible splitting.
class SortedSample {
public:
    /// Throws DomainError if `values` is empty or holds a non-finite entry.
    explicit SortedSample(std::vector<double> values);

    [[nodiscard]] std::size_t size() const noexcept { return sorted_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return sorted_; }
    [[nodiscard]] std::span<const double> original() const noexcept { return original_; }

    /// One-based order statistic X_(k).
    [[nodiscard]] double order_stat(std::size_t k) const;
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return sorted_[i]; }
    [[nodiscard]] double min() const noexcept { return sorted_.front(); }
    [[nodiscard]] double max() const noexcept { return sorted_.back(); }
    [[nodiscard]] double range() const noexcept { return sorted_.back() - sorted_.front(); }

private:
    std::vector<double> original_;
    std::vector<double> sorted_;
};

/// Disjoint halves of a sample: s1 feeds the pilot estimator, s2 the
/// confidence-set statistic.
struct SampleSplit {
    SortedSample s1;
    SortedSample s2;
};

/// Configuration shared by the split-based methods.
struct SplitConfig {
    RngStream stream{};
    double fraction = 0.5;                 ///< share of the data assigned to s1
    std::optional<std::size_t> pilot_r{};  ///< Venter window; default ceil(sqrt(|s1|))
};

/// Random partition without replacement. The size of s1 is fraction * m,
/// rounded up or down at random in proportion to the fractional part, so an
/// even split of an odd sample picks either side deterministically from the
/// stream. Throws InfeasibleError when either part would be empty.
SampleSplit split_sample(std::span<const double> data, RngStream stream, double fraction = 0.5);

/// Default Venter window for a sample of size n: ceil(sqrt(n)) clamped to
/// [1, (n - 1) / 2]. Throws InfeasibleError when n < 3.
std::size_t default_venter_window(std::size_t n);

/// Venter's spacing estimator: X_(K) with K = argmin_{r < j <= n - r}
/// X_(j + r) - X_(j - r) (one-based), ties to the smallest j.
/// Throws InfeasibleError if n < 2r + 1 and DomainError if r == 0.
double venter_pilot(const SortedSample& sample, std::size_t r);
double venter_pilot(const SortedSample& sample);

} // namespace modeset
