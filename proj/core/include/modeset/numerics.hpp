#pragma once

#include <cstdint>

namespace modeset {

/// A probability in [0, 1]. Construction validates the range.
class Probability {
public:
    constexpr Probability() = default;
    explicit Probability(double value);

    [[nodiscard]] constexpr double value() const noexcept { return value_; }
    [[nodiscard]] constexpr double complement() const noexcept { return 1.0 - value_; }

    friend constexpr bool operator==(Probability, Probability) = default;
    friend constexpr auto operator<=>(Probability, Probability) = default;

private:
    double value_ = 0.0;
};

/// Validates a significance level: alpha must lie strictly inside (0, 1).
Probability significance_level(double alpha);

namespace numerics {

/// Regularized incomplete beta function I_x(a, b).
///
/// Evaluated by the modified Lentz continued fraction, switching to the
/// reflected fraction 1 - I_{1-x}(b, a) when x > (a + 1) / (a + b + 2). The
/// leading factor x^a (1-x)^b / B(a, b) is formed from Stirling-error and
/// deviance terms so that large, imbalanced shapes keep full precision.
/// Throws DomainError for x outside [0, 1] or non-positive shapes.
double reg_inc_beta(double x, double a, double b);

/// Beta(a, b) density.
double beta_pdf(double x, double a, double b);

/// Quantile of Beta(a, b): returns x with I_x(a, b) = p.
/// qbeta(0, a, b) = 0 and qbeta(1, a, b) = 1.
double qbeta(double p, double a, double b);

/// Regularized lower incomplete gamma P(a, x).
double reg_lower_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// without cancellation.
double reg_upper_gamma(double a, double x);

/// Chi-square distribution function with df degrees of freedom.
double pchisq(double x, double df);

/// Chi-square quantile, via the inverse regularized lower incomplete gamma.
double qchisq(double p, double df);

/// Standard normal distribution function.
double pnorm(double x);

// Building blocks exposed for testing.
namespace detail {
/// log(n!) - log(sqrt(2 pi n) (n/e)^n), accurate for all n > 0.
double stirling_error(double n);
/// Deviance term x log(x / np) + np - x, computed without cancellation.
double deviance_term(double x, double np);
/// Binomial "density" at real k for a count of size n: n!/(k!(n-k)!) p^k q^(n-k).
double binomial_density(double k, double n, double p, double q);
/// Poisson "density" at real k with mean lambda: lambda^k e^-lambda / k!.
double poisson_density(double k, double lambda);
} // namespace detail

} // namespace numerics
} // namespace modeset
