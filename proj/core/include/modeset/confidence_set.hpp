#pragma once

#include <optional>
#include <span>
#include <vector>

namespace modeset {

/// Closed interval [lo, hi]; lo may be -inf and hi +inf.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] double width() const noexcept { return hi - lo; }
    [[nodiscard]] bool contains(double x) const noexcept { return lo <= x && x <= hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// A finite union of disjoint closed intervals in canonical form: sorted, with
/// hi_k < lo_{k+1}. Only make_confidence_set and dilate construct one.
class ConfidenceSet {
public:
    ConfidenceSet() = default;

    [[nodiscard]] std::span<const Interval> intervals() const noexcept { return intervals_; }
    [[nodiscard]] std::size_t size() const noexcept { return intervals_.size(); }
    [[nodiscard]] bool empty() const noexcept { return intervals_.empty(); }
    [[nodiscard]] bool bounded() const noexcept;

    /// Lebesgue measure; +inf when any interval is unbounded, 0 when empty.
    [[nodiscard]] double width() const noexcept;
    /// Membership with closed endpoints.
    [[nodiscard]] bool contains(double x) const noexcept;
    /// Smallest interval covering the set.
    [[nodiscard]] std::optional<Interval> hull() const noexcept;
    /// True when every point of this set lies in `other`.
    [[nodiscard]] bool subset_of(const ConfidenceSet& other) const noexcept;

    friend bool operator==(const ConfidenceSet&, const ConfidenceSet&) = default;

private:
    friend ConfidenceSet make_confidence_set(std::vector<Interval> raw);
    explicit ConfidenceSet(std::vector<Interval> canonical) : intervals_(std::move(canonical)) {}

    std::vector<Interval> intervals_;
};

/// Sorts and merges overlapping or touching intervals. Throws DomainError on
/// lo > hi or NaN endpoints. Idempotent.
ConfidenceSet make_confidence_set(std::vector<Interval> raw);

/// Minkowski dilation {x : dist(x, set) <= h}. Requires h > 0.
ConfidenceSet dilate(const ConfidenceSet& set, double h);

} // namespace modeset
