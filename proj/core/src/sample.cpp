#include "modeset/sample.hpp"

#include "modeset/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace modeset {

SortedSample::SortedSample(std::vector<double> values) : original_(std::move(values))
{
    if (original_.empty()) throw DomainError("sample must contain at least one observation");
    for (double v : original_) {
        if (!std::isfinite(v)) throw DomainError("sample contains a non-finite value");
    }
    sorted_ = original_;
    std::sort(sorted_.begin(), sorted_.end());
}

double SortedSample::order_stat(std::size_t k) const
{
    if (k < 1 || k > sorted_.size()) throw DomainError("order statistic index out of range");
    return sorted_[k - 1];
}

SampleSplit split_sample(std::span<const double> data, RngStream stream, double fraction)
{
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw DomainError("split fraction must lie strictly between 0 and 1");
    }
    const std::size_t m = data.size();
    if (m < 2) throw InfeasibleError("sample splitting needs at least 2 observations");

    CounterRng rng(stream);
    const double target = fraction * static_cast<double>(m);
    auto first = static_cast<std::size_t>(std::floor(target));
    if (rng.uniform() < target - std::floor(target)) ++first;
    if (first == 0 || first == m) {
        std::ostringstream msg;
        msg << "split of " << m << " observations at fraction " << fraction
            << " leaves an empty half";
        throw InfeasibleError(msg.str());
    }

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = m - 1; i > 0; --i) {
        std::swap(order[i], order[rng.uniform_below(i + 1)]);
    }
    std::vector<double> s1;
    std::vector<double> s2;
    s1.reserve(first);
    s2.reserve(m - first);
    for (std::size_t i = 0; i < m; ++i) {
        (i < first ? s1 : s2).push_back(data[order[i]]);
    }
    return {SortedSample(std::move(s1)), SortedSample(std::move(s2))};
}

std::size_t default_venter_window(std::size_t n)
{
    if (n < 3) {
        std::ostringstream msg;
        msg << "Venter pilot needs at least 3 observations, got " << n;
        throw InfeasibleError(msg.str());
    }
    const auto r = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    return std::clamp<std::size_t>(r, 1, (n - 1) / 2);
}

double venter_pilot(const SortedSample& sample, std::size_t r)
{
    if (r == 0) throw DomainError("Venter window must be at least 1");
    const std::size_t n = sample.size();
    if (n < 2 * r + 1) {
        std::ostringstream msg;
        msg << "Venter pilot with window " << r << " needs at least " << 2 * r + 1
            << " observations, got " << n;
        throw InfeasibleError(msg.str());
    }
    const auto x = sample.values();
    // Zero-based centre c = j - 1 ranges over [r, n - r - 1].
    std::size_t best = r;
    double best_gap = x[2 * r] - x[0];
    for (std::size_t c = r + 1; c + r < n; ++c) {
        const double gap = x[c + r] - x[c - r];
        if (gap < best_gap) {
            best_gap = gap;
            best = c;
        }
    }
    return x[best];
}

double venter_pilot(const SortedSample& sample)
{
    return venter_pilot(sample, default_venter_window(sample.size()));
}

} // namespace modeset
