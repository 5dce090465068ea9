#include "modeset/confidence_set.hpp"

#include "modeset/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace modeset {

bool ConfidenceSet::bounded() const noexcept
{
    return std::all_of(intervals_.begin(), intervals_.end(), [](const Interval& iv) {
        return std::isfinite(iv.lo) && std::isfinite(iv.hi);
    });
}

double ConfidenceSet::width() const noexcept
{
    double total = 0.0;
    for (const auto& iv : intervals_) total += iv.width();
    return total;
}

bool ConfidenceSet::contains(double x) const noexcept
{
    // First interval whose upper end is >= x.
    const auto it = std::lower_bound(intervals_.begin(), intervals_.end(), x,
                                     [](const Interval& iv, double v) { return iv.hi < v; });
    return it != intervals_.end() && it->lo <= x;
}

std::optional<Interval> ConfidenceSet::hull() const noexcept
{
    if (intervals_.empty()) return std::nullopt;
    return Interval{intervals_.front().lo, intervals_.back().hi};
}

bool ConfidenceSet::subset_of(const ConfidenceSet& other) const noexcept
{
    const auto outer = other.intervals();
    return std::all_of(intervals_.begin(), intervals_.end(), [&](const Interval& iv) {
        const auto it = std::lower_bound(outer.begin(), outer.end(), iv.lo,
                                         [](const Interval& o, double v) { return o.hi < v; });
        return it != outer.end() && it->lo <= iv.lo && iv.hi <= it->hi;
    });
}

ConfidenceSet make_confidence_set(std::vector<Interval> raw)
{
    for (const auto& iv : raw) {
        if (std::isnan(iv.lo) || std::isnan(iv.hi) || iv.lo > iv.hi) {
            std::ostringstream msg;
            msg << "invalid interval [" << iv.lo << ", " << iv.hi << "]";
            throw DomainError(msg.str());
        }
    }
    std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    std::vector<Interval> merged;
    merged.reserve(raw.size());
    for (const auto& iv : raw) {
        if (!merged.empty() && iv.lo <= merged.back().hi) {
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        } else {
            merged.push_back(iv);
        }
    }
    return ConfidenceSet(std::move(merged));
}

ConfidenceSet dilate(const ConfidenceSet& set, double h)
{
    if (!(h > 0.0)) throw DomainError("dilation radius must be positive");
    std::vector<Interval> grown;
    grown.reserve(set.size());
    for (const auto& iv : set.intervals()) grown.push_back({iv.lo - h, iv.hi + h});
    return make_confidence_set(std::move(grown));
}

} // namespace modeset
