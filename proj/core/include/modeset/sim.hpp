#pragma once

// Monte-Carlo coverage and width studies on the f_beta test family:
//   f(x) = (1 - |x|^beta) / 2                               on [-1, 0]
//   f(x) = 1/2 - beta^beta x^beta / (2 (beta + 2)^beta)     on [0, (beta + 2) / beta]
// which has its mode at 0 with f(0) = 1/2.

#include "modeset/methods.hpp"
#include "modeset/rng.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace modeset::sim {

class FBetaDensity {
public:
    /// Throws DomainError unless beta > 0.
    explicit FBetaDensity(double beta);

    [[nodiscard]] double beta() const noexcept { return beta_; }
    [[nodiscard]] double lower() const noexcept { return -1.0; }
    [[nodiscard]] double upper() const noexcept { return (beta_ + 2.0) / beta_; }
    [[nodiscard]] double mode() const noexcept { return 0.0; }

    [[nodiscard]] double pdf(double x) const noexcept;
    [[nodiscard]] double cdf(double x) const noexcept;
    /// Inverse cdf: |cdf(x) - u| <= 1e-12.
    [[nodiscard]] double quantile(double u) const;

private:
    double beta_;
    double right_coef_;  // (beta / (beta + 2))^beta
    double cdf_at_mode_; // beta / (2 (beta + 1))
};

double fbeta_cdf(double beta, double x);

/// Inverse-cdf draws; all values lie in [-1, (beta + 2) / beta].
std::vector<double> fbeta_sample(double beta, RngStream stream, std::size_t n);

/// Exchangeable dependent sample with f_beta marginals: a Gaussian copula
/// with common pairwise correlation `correlation` in [0, 1).
std::vector<double> fbeta_sample_equicorrelated(double beta, RngStream stream, std::size_t n,
                                                double correlation);

/// n points uniform on the disk of the given radius about `center`, row-major.
std::vector<double> sample_uniform_disk(RngStream stream, std::size_t n, double radius = 1.0,
                                        std::span<const double> center = {});

/// sup_x |F_n(x) - F(x)| for the empirical cdf of `sample`.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Bandwidth n^(-1/(1 + 2 beta)) sqrt(ln n) used for M2 in the studies.
double study_bandwidth(std::size_t n, double beta);

struct CoverageReport {
    Method method = Method::m1;
    std::size_t n = 0;
    double beta = 1.0;
    double alpha = 0.05;
    std::size_t replications = 0;
    double coverage = 0.0;        ///< covering replications / replications
    double width_q10 = 0.0;
    double width_q50 = 0.0;
    double width_q90 = 0.0;
    std::size_t vacuous = 0;
    std::size_t errors = 0;
    double seconds = 0.0;
    std::vector<double> widths;   ///< per replication; NaN where the method failed
    std::vector<bool> covered;
};

struct StudyConfig {
    std::vector<Method> methods{Method::m1, Method::m2, Method::m3};
    std::vector<std::size_t> n_values{1000, 2000};
    std::vector<double> beta_values{0.5, 1.0, 2.0, 4.0};
    double alpha = 0.05;
    std::size_t replications = 1000;
    std::uint64_t base_seed = 42;
    double rho = 2.0;
    std::optional<std::vector<double>> h_grid{};  ///< m2a; unset = default grid
    std::size_t threads = 1;
};

/// Data stream for replication r of a study: seed = base_seed, stream_id = r.
RngStream replication_stream(std::uint64_t base_seed, std::size_t replication);

/// Split stream for replication r, independent of the data stream.
RngStream split_stream(std::uint64_t base_seed, std::size_t replication);

/// One report per (method, n, beta), ordered by n, then beta, then method. Replication r
/// draws its data from replication_stream(base_seed, r), so different methods
/// and sample sizes see matched data. Method errors are counted, not thrown.
std::vector<CoverageReport> run_coverage_study(const StudyConfig& cfg);

/// Type-7 (linear interpolation) sample quantile of the finite entries.
double quantile(std::vector<double> values, double q);

/// CSV with header
/// method,n,beta,alpha,reps,coverage,width_q10,width_q50,width_q90,vacuous,errors,seconds.
/// `seconds` is written as NA unless include_timing is set, which keeps the
/// report byte-identical across repeated runs.
void write_report_csv(std::ostream& out, std::span<const CoverageReport> reports,
                      bool include_timing = false);

/// Per-replication widths: method,n,beta,replication,width,covered.
void write_widths_csv(std::ostream& out, std::span<const CoverageReport> reports);

} // namespace modeset::sim
