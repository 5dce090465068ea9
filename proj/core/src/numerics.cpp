#include "modeset/numerics.hpp"

#include "modeset/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace modeset {

Probability::Probability(double value) : value_(value)
{
    if (!(value >= 0.0 && value <= 1.0)) {
        std::ostringstream msg;
        msg << "probability must lie in [0, 1], got " << value;
        throw DomainError(msg.str());
    }
}

Probability significance_level(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream msg;
        msg << "alpha must lie strictly between 0 and 1, got " << alpha;
        throw DomainError(msg.str());
    }
    return Probability(alpha);
}

namespace numerics {
namespace {

constexpr double kTiny = 1e-300;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxFractionTerms = 200000;

void check_shapes(double a, double b)
{
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        std::ostringstream msg;
        msg << "beta shapes must be positive and finite, got a=" << a << " b=" << b;
        throw DomainError(msg.str());
    }
}

// x^a y^b / B(a, b) * (a + b) / (a b) with y = 1 - x, in Loader's saddle-point
// form. Takes both shapes so b is never recovered as (a + b) - a.
double beta_kernel(double a, double b, double x, double y)
{
    if (x == 0.0 || y == 0.0) return 0.0;
    const double n = a + b;
    const double lc = detail::stirling_error(n) - detail::stirling_error(a) - detail::stirling_error(b)
                    - detail::deviance_term(a, n * x) - detail::deviance_term(b, n * y);
    return std::exp(lc) * std::sqrt(n / (2.0 * std::numbers::pi * a * b));
}

// x^a (1-x)^b / (a B(a, b)), the prefactor of the continued fraction.
double beta_front(double x, double a, double b)
{
    return beta_kernel(a, b, x, 1.0 - x) * b / (a + b);
}

// Continued fraction for I_x(a, b) * a B(a, b) / (x^a (1-x)^b), modified
// Lentz evaluation. Converges quickly for x < (a + 1) / (a + b + 2).
double beta_fraction(double x, double a, double b)
{
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxFractionTerms; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= kEps) return h;
    }
    throw InfeasibleError("incomplete beta continued fraction failed to converge");
}

// Series for P(a, x), valid for x < a + 1.
double gamma_series(double a, double x)
{
    double term = 1.0;
    double sum = 1.0;
    double ap = a;
    for (int k = 1; k <= kMaxFractionTerms; ++k) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) <= std::fabs(sum) * kEps) {
            return sum * detail::poisson_density(a, x);
        }
    }
    throw InfeasibleError("incomplete gamma series failed to converge");
}

// Continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_fraction(double a, double x)
{
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxFractionTerms; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= kEps) {
            // e^-x x^a / Gamma(a) = poisson_density(a, x) * a / x * x
            return detail::poisson_density(a, x) * a * h;
        }
    }
    throw InfeasibleError("incomplete gamma continued fraction failed to converge");
}

// Safeguarded Newton iteration for a nondecreasing cdf on [lo, hi].
// `residual` returns cdf(x) - target (or its complement-based equivalent,
// which must have the same sign convention); `slope` the density.
template <typename Residual, typename Slope>
double invert_monotone(double lo, double hi, double x, Residual residual, Slope slope)
{
    for (int iter = 0; iter < 400; ++iter) {
        const double r = residual(x);
        if (r == 0.0) return x;
        if (r < 0.0) lo = x; else hi = x;
        if (hi - lo <= 2.0 * kEps * std::max(std::fabs(lo), std::fabs(hi)) || hi - lo <= kTiny) {
            return 0.5 * (lo + hi);
        }
        const double s = slope(x);
        double next = (s > 0.0 && std::isfinite(s)) ? x - r / s : lo - 1.0;
        if (!(next > lo && next < hi)) next = lo + 0.5 * (hi - lo);
        if (next == x) return x;
        x = next;
    }
    return x;
}

} // namespace

namespace detail {

double stirling_error(double n)
{
    constexpr double s0 = 1.0 / 12.0;
    constexpr double s1 = 1.0 / 360.0;
    constexpr double s2 = 1.0 / 1260.0;
    constexpr double s3 = 1.0 / 1680.0;
    constexpr double s4 = 1.0 / 1188.0;
    if (n <= 15.0) {
        return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n
             - 0.5 * std::log(2.0 * std::numbers::pi);
    }
    const double nn = n * n;
    if (n > 500.0) return (s0 - s1 / nn) / n;
    if (n > 80.0) return (s0 - (s1 - s2 / nn) / nn) / n;
    if (n > 35.0) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

double deviance_term(double x, double np)
{
    if (std::fabs(x - np) < 0.1 * (x + np)) {
        double v = (x - np) / (x + np);
        double s = (x - np) * v;
        if (std::fabs(s) < std::numeric_limits<double>::min()) return s;
        double ej = 2.0 * x * v;
        v *= v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v;
            const double s1 = s + ej / (2 * j + 1);
            if (s1 == s) return s1;
            s = s1;
        }
    }
    return x * std::log(x / np) + np - x;
}

double binomial_density(double k, double n, double p, double q)
{
    if (p == 0.0) return k == 0.0 ? 1.0 : 0.0;
    if (q == 0.0) return k == n ? 1.0 : 0.0;
    if (k == 0.0) return std::exp(n * std::log1p(-p));
    if (k == n) return std::exp(n * std::log(p));
    const double lc = stirling_error(n) - stirling_error(k) - stirling_error(n - k)
                    - deviance_term(k, n * p) - deviance_term(n - k, n * q);
    const double lf = std::log(2.0 * std::numbers::pi) + std::log(k) + std::log1p(-k / n);
    return std::exp(lc - 0.5 * lf);
}

double poisson_density(double k, double lambda)
{
    if (lambda == 0.0) return k == 0.0 ? 1.0 : 0.0;
    if (k == 0.0) return std::exp(-lambda);
    return std::exp(-stirling_error(k) - deviance_term(k, lambda))
         / std::sqrt(2.0 * std::numbers::pi * k);
}

} // namespace detail

double reg_inc_beta(double x, double a, double b)
{
    check_shapes(a, b);
    if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream msg;
        msg << "incomplete beta argument must lie in [0, 1], got " << x;
        throw DomainError(msg.str());
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    if (x > (a + 1.0) / (a + b + 2.0)) {
        const double y = 1.0 - x;
        return 1.0 - beta_front(y, b, a) * beta_fraction(y, b, a);
    }
    return beta_front(x, a, b) * beta_fraction(x, a, b);
}

double beta_pdf(double x, double a, double b)
{
    check_shapes(a, b);
    if (x < 0.0 || x > 1.0) return 0.0;
    if (x == 0.0) return a < 1.0 ? std::numeric_limits<double>::infinity() : (a == 1.0 ? b : 0.0);
    if (x == 1.0) return b < 1.0 ? std::numeric_limits<double>::infinity() : (b == 1.0 ? a : 0.0);
    return beta_kernel(a, b, x, 1.0 - x) * a * b / (a + b) / (x * (1.0 - x));
}

double qbeta(double p, double a, double b)
{
    check_shapes(a, b);
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << "qbeta probability must lie in [0, 1], got " << p;
        throw DomainError(msg.str());
    }
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    // Upper quantiles are found through the reflected problem so that the
    // target 1 - p is represented exactly rather than p close to one.
    if (p > 0.5) {
        const double q = 1.0 - p;
        const double y = invert_monotone(
            0.0, 1.0, b / (a + b),
            [&](double t) { return reg_inc_beta(t, b, a) - q; },
            [&](double t) { return beta_pdf(t, b, a); });
        return 1.0 - y;
    }
    return invert_monotone(
        0.0, 1.0, a / (a + b),
        [&](double t) { return reg_inc_beta(t, a, b) - p; },
        [&](double t) { return beta_pdf(t, a, b); });
}

double reg_lower_gamma(double a, double x)
{
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("gamma shape must be positive");
    if (std::isnan(x)) throw DomainError("gamma argument is NaN");
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return gamma_series(a, x);
    return 1.0 - gamma_fraction(a, x);
}

double reg_upper_gamma(double a, double x)
{
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("gamma shape must be positive");
    if (std::isnan(x)) throw DomainError("gamma argument is NaN");
    if (x <= 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - gamma_series(a, x);
    return gamma_fraction(a, x);
}

double pchisq(double x, double df)
{
    if (!(df > 0.0)) throw DomainError("chi-square degrees of freedom must be positive");
    return reg_lower_gamma(0.5 * df, 0.5 * x);
}

double qchisq(double p, double df)
{
    if (!(df > 0.0) || !std::isfinite(df)) {
        std::ostringstream msg;
        msg << "chi-square degrees of freedom must be positive, got " << df;
        throw DomainError(msg.str());
    }
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("qchisq probability must lie in [0, 1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    const double a = 0.5 * df;
    const auto density = [a](double t) {
        return t > 0.0 ? detail::poisson_density(a, t) * a / t : 0.0;
    };
    // Bracket on the gamma scale: [0, hi] with P(a, hi) > p.
    double hi = std::max(1.0, 2.0 * a);
    if (p <= 0.5) {
        while (reg_lower_gamma(a, hi) < p) hi *= 2.0;
        const double t = invert_monotone(
            0.0, hi, std::min(a, 0.5 * hi),
            [&](double s) { return reg_lower_gamma(a, s) - p; }, density);
        return 2.0 * t;
    }
    const double q = 1.0 - p;
    while (reg_upper_gamma(a, hi) > q) hi *= 2.0;
    // Residual written as q - Q(s) keeps the "cdf minus target" sign convention.
    const double t = invert_monotone(
        0.0, hi, std::min(a, 0.5 * hi),
        [&](double s) { return q - reg_upper_gamma(a, s); }, density);
    return 2.0 * t;
}

double pnorm(double x)
{
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

} // namespace numerics
} // namespace modeset
