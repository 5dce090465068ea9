#pragma once

// Exact extraction of {theta : sum_i g_i(theta) < cutoff} for separable
// statistics whose terms g_i are, between consecutive data points, concave
// and monotone in theta, and which diverge as |theta| grows. Both Edelman
// statistics have this form. Between knots the sum is concave, so each knot
// gap contributes at most two boundary points, and a cheap upper bound
// (each term at its larger endpoint) settles most gaps without a search.

#include "modeset/confidence_set.hpp"
#include "modeset/error.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

namespace modeset::detail {

template <typename Term>
class SeparableStatistic {
public:
    /// `points` ascending; term(i, theta) is the contribution of points[i].
    SeparableStatistic(std::span<const double> points, Term term)
        : points_(points), term_(std::move(term))
    {
    }

    double operator()(double theta) const
    {
        double total = 0.0;
        for (std::size_t i = 0; i < points_.size(); ++i) total += term_(i, theta);
        return total;
    }

    [[nodiscard]] std::span<const double> points() const noexcept { return points_; }
    [[nodiscard]] double term(std::size_t i, double theta) const { return term_(i, theta); }

private:
    std::span<const double> points_;
    Term term_;
};

namespace sublevel {

// Last point of [inside, outside] (in either orientation) with f < cutoff,
// given f(inside) < cutoff <= f(outside). Runs to double resolution.
template <typename F>
double boundary(const F& f, double cutoff, double inside, double outside)
{
    for (int iter = 0; iter < 2100; ++iter) {
        const double mid = inside + 0.5 * (outside - inside);
        if (mid == inside || mid == outside) break;
        if (f(mid) < cutoff) inside = mid; else outside = mid;
    }
    return inside;
}

// Golden-section search for the maximiser of a concave f on [a, b].
template <typename F>
double argmax_concave(const F& f, double a, double b)
{
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int iter = 0; iter < 200 && c < d; ++iter) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        }
    }
    return fc >= fd ? c : d;
}

// Walks outward from `start` (where f < cutoff) in direction `sign` until f
// reaches the cutoff, then bisects.
template <typename F>
double outer_boundary(const F& f, double cutoff, double start, double sign, double scale)
{
    double step = scale;
    for (int iter = 0; iter < 2000; ++iter) {
        const double probe = start + sign * step;
        if (!std::isfinite(probe)) break;
        if (f(probe) >= cutoff) return boundary(f, cutoff, start, probe);
        start = probe;
        step *= 2.0;
    }
    throw InfeasibleError("statistic does not reach the cutoff: confidence set is unbounded");
}

} // namespace sublevel

/// Closed hull of each component of {theta : stat(theta) < cutoff}.
template <typename Term>
ConfidenceSet strict_sublevel_set(const SeparableStatistic<Term>& stat, double cutoff)
{
    const auto x = stat.points();
    if (x.empty()) throw DomainError("statistic has no data points");

    std::vector<double> knots(x.begin(), x.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    const std::size_t u = knots.size();

    // Value at each knot, split into contributions from points below and
    // above it, for the per-gap upper bound.
    std::vector<double> value(u, 0.0);
    std::vector<double> below(u, 0.0);
    std::vector<double> above(u, 0.0);
    for (std::size_t m = 0; m < u; ++m) {
        double lo = 0.0;
        double at = 0.0;
        double hi = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double t = stat.term(i, knots[m]);
            if (x[i] < knots[m]) lo += t; else if (x[i] > knots[m]) hi += t; else at += t;
        }
        below[m] = lo;
        above[m] = hi;
        value[m] = lo + at + hi;
    }

    std::vector<Interval> pieces;
    const double scale = u > 1 ? knots.back() - knots.front() : std::max(1.0, std::fabs(knots.front()));

    if (value.front() < cutoff) {
        const double l = sublevel::outer_boundary(stat, cutoff, knots.front(), -1.0, scale);
        pieces.push_back({l, knots.front()});
    }
    if (value.back() < cutoff) {
        const double r = sublevel::outer_boundary(stat, cutoff, knots.back(), +1.0, scale);
        pieces.push_back({knots.back(), r});
    }
    for (std::size_t m = 0; m + 1 < u; ++m) {
        const double a = knots[m];
        const double b = knots[m + 1];
        const double fa = value[m];
        const double fb = value[m + 1];
        const bool a_in = fa < cutoff;
        const bool b_in = fb < cutoff;
        if (!a_in && !b_in) continue;  // concave: f >= min(fa, fb) on [a, b]
        if (a_in && !b_in) {
            pieces.push_back({a, sublevel::boundary(stat, cutoff, a, b)});
            continue;
        }
        if (!a_in && b_in) {
            pieces.push_back({sublevel::boundary(stat, cutoff, b, a), b});
            continue;
        }
        // Terms from points <= a grow toward b; terms from points >= b grow
        // toward a.
        const double upper = below[m + 1] + above[m];
        if (upper < cutoff) {
            pieces.push_back({a, b});
            continue;
        }
        const double peak = sublevel::argmax_concave(stat, a, b);
        if (stat(peak) < cutoff) {
            pieces.push_back({a, b});
            continue;
        }
        pieces.push_back({a, sublevel::boundary(stat, cutoff, a, peak)});
        pieces.push_back({sublevel::boundary(stat, cutoff, b, peak), b});
    }
    // An isolated knot below the cutoff whose neighbouring gaps are all out
    // is still a (degenerate) member.
    for (std::size_t m = 0; m < u; ++m) {
        if (value[m] < cutoff) pieces.push_back({knots[m], knots[m]});
    }
    return make_confidence_set(std::move(pieces));
}

} // namespace modeset::detail
