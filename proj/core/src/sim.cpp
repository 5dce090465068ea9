#include "modeset/sim.hpp"

#include "modeset/error.hpp"
#include "modeset/numerics.hpp"
#include "modeset/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <locale>
#include <numbers>
#include <ostream>
#include <sstream>

namespace modeset::sim {
namespace {

constexpr std::uint64_t kSplitTag = 0x73706c6974ull;  // "split"

std::string format_number(double v)
{
    if (std::isnan(v)) return "NA";
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s.precision(10);
    s << v;
    return s.str();
}

} // namespace

FBetaDensity::FBetaDensity(double beta) : beta_(beta)
{
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        std::ostringstream msg;
        msg << "beta must be positive, got " << beta;
        throw DomainError(msg.str());
    }
    right_coef_ = std::pow(beta / (beta + 2.0), beta);
    cdf_at_mode_ = beta / (2.0 * (beta + 1.0));
}

double FBetaDensity::pdf(double x) const noexcept
{
    if (x < -1.0 || x > upper()) return 0.0;
    if (x <= 0.0) return 0.5 - 0.5 * std::pow(-x, beta_);
    return 0.5 - 0.5 * right_coef_ * std::pow(x, beta_);
}

double FBetaDensity::cdf(double x) const noexcept
{
    if (x <= -1.0) return 0.0;
    if (x >= upper()) return 1.0;
    const double b1 = beta_ + 1.0;
    if (x < 0.0) return 0.5 * (x + 1.0) + (std::pow(-x, b1) - 1.0) / (2.0 * b1);
    return cdf_at_mode_ + 0.5 * x - right_coef_ * std::pow(x, b1) / (2.0 * b1);
}

double FBetaDensity::quantile(double u) const
{
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
    if (u == cdf_at_mode_) return 0.0;
    double lo = u < cdf_at_mode_ ? -1.0 : 0.0;
    double hi = u < cdf_at_mode_ ? 0.0 : upper();
    if (u == 0.0) return lo;
    if (u == 1.0) return hi;
    // Bracketed Newton: the density vanishes at both support ends, so steps
    // that leave the bracket fall back to bisection.
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double r = cdf(x) - u;
        if (r == 0.0) return x;
        if (r < 0.0) lo = x; else hi = x;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(x))) break;
        const double d = pdf(x);
        double next = d > 0.0 ? x - r / d : lo - 1.0;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x = next;
    }
    return x;
}

double fbeta_cdf(double beta, double x)
{
    return FBetaDensity(beta).cdf(x);
}

std::vector<double> fbeta_sample(double beta, RngStream stream, std::size_t n)
{
    const FBetaDensity density(beta);
    auto u = sample_uniform(stream, n);
    for (auto& v : u) v = density.quantile(v);
    return u;
}

std::vector<double> fbeta_sample_equicorrelated(double beta, RngStream stream, std::size_t n,
                                                double correlation)
{
    if (!(correlation >= 0.0 && correlation < 1.0)) {
        throw DomainError("equicorrelation must lie in [0, 1)");
    }
    const FBetaDensity density(beta);
    CounterRng rng(stream);
    const double common = rng.normal();
    const double a = std::sqrt(correlation);
    const double b = std::sqrt(1.0 - correlation);
    std::vector<double> out(n);
    for (auto& v : out) {
        const double z = a * common + b * rng.normal();
        // Keep the probability strictly inside (0, 1) for extreme z.
        const double u = std::clamp(numerics::pnorm(z), 1e-300, 1.0 - 1e-16);
        v = density.quantile(u);
    }
    return out;
}

std::vector<double> sample_uniform_disk(RngStream stream, std::size_t n, double radius,
                                        std::span<const double> center)
{
    if (!(radius > 0.0)) throw DomainError("disk radius must be positive");
    if (!center.empty() && center.size() != 2) throw DomainError("disk centre must be 2-D");
    const double cx = center.empty() ? 0.0 : center[0];
    const double cy = center.empty() ? 0.0 : center[1];
    CounterRng rng(stream);
    std::vector<double> out(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = radius * std::sqrt(rng.uniform());
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        out[2 * i] = cx + r * std::cos(phi);
        out[2 * i + 1] = cy + r * std::sin(phi);
    }
    return out;
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf)
{
    if (sample.empty()) throw DomainError("KS distance needs a nonempty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double study_bandwidth(std::size_t n, double beta)
{
    const double dn = static_cast<double>(n);
    return std::pow(dn, -1.0 / (1.0 + 2.0 * beta)) * std::sqrt(std::log(dn));
}

RngStream replication_stream(std::uint64_t base_seed, std::size_t replication)
{
    return {base_seed, static_cast<std::uint64_t>(replication)};
}

RngStream split_stream(std::uint64_t base_seed, std::size_t replication)
{
    return derive_stream(replication_stream(base_seed, replication), kSplitTag);
}

double quantile(std::vector<double> values, double q)
{
    std::erase_if(values, [](double v) { return !std::isfinite(v); });
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<CoverageReport> run_coverage_study(const StudyConfig& cfg)
{
    if (cfg.methods.empty()) throw DomainError("study needs at least one method");
    if (cfg.n_values.empty() || cfg.beta_values.empty()) throw DomainError("study grids must be nonempty");
    if (cfg.replications == 0) throw DomainError("replications must be positive");
    const Probability alpha = significance_level(cfg.alpha);
    for (double b : cfg.beta_values) FBetaDensity{b};
    for (std::size_t n : cfg.n_values) {
        if (n == 0) throw DomainError("sample sizes must be positive");
    }

    std::vector<CoverageReport> reports;
    const std::size_t reps = cfg.replications;
    const std::size_t n_methods = cfg.methods.size();
    for (std::size_t n : cfg.n_values) {
        for (double beta : cfg.beta_values) {
            // outcome[r * n_methods + m]
            struct Slot {
                double width = std::numeric_limits<double>::quiet_NaN();
                bool covered = false;
                bool vacuous = false;
                bool error = false;
                double seconds = 0.0;
            };
            std::vector<Slot> slots(reps * n_methods);
            parallel_for(reps, cfg.threads, [&](std::size_t r) {
                const auto data = fbeta_sample(beta, replication_stream(cfg.base_seed, r), n);
                MethodConfig mc;
                mc.h = study_bandwidth(n, beta);
                mc.h_grid = cfg.h_grid;
                mc.rho = cfg.rho;
                mc.split.stream = split_stream(cfg.base_seed, r);
                for (std::size_t m = 0; m < n_methods; ++m) {
                    Slot& slot = slots[r * n_methods + m];
                    const auto start = std::chrono::steady_clock::now();
                    try {
                        const auto outcome = run_method(cfg.methods[m], data, alpha, mc);
                        slot.width = outcome.set.width();
                        slot.covered = outcome.set.contains(0.0);
                        slot.vacuous = outcome.vacuous;
                    } catch (const std::exception&) {
                        slot.error = true;
                    }
                    slot.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start).count();
                }
            });
            for (std::size_t m = 0; m < n_methods; ++m) {
                CoverageReport rep;
                rep.method = cfg.methods[m];
                rep.n = n;
                rep.beta = beta;
                rep.alpha = cfg.alpha;
                rep.replications = reps;
                rep.widths.resize(reps);
                rep.covered.resize(reps);
                std::size_t hits = 0;
                for (std::size_t r = 0; r < reps; ++r) {
                    const Slot& slot = slots[r * n_methods + m];
                    rep.widths[r] = slot.width;
                    rep.covered[r] = slot.covered;
                    hits += slot.covered ? 1 : 0;
                    rep.vacuous += slot.vacuous ? 1 : 0;
                    rep.errors += slot.error ? 1 : 0;
                    rep.seconds += slot.seconds;
                }
                rep.coverage = static_cast<double>(hits) / static_cast<double>(reps);
                rep.width_q10 = quantile(rep.widths, 0.1);
                rep.width_q50 = quantile(rep.widths, 0.5);
                rep.width_q90 = quantile(rep.widths, 0.9);
                reports.push_back(std::move(rep));
            }
        }
    }
    return reports;
}

void write_report_csv(std::ostream& out, std::span<const CoverageReport> reports, bool include_timing)
{
    out << "method,n,beta,alpha,reps,coverage,width_q10,width_q50,width_q90,vacuous,errors,seconds\n";
    for (const auto& r : reports) {
        out << method_name(r.method) << ',' << r.n << ',' << format_number(r.beta) << ','
            << format_number(r.alpha) << ',' << r.replications << ',' << format_number(r.coverage)
            << ',' << format_number(r.width_q10) << ',' << format_number(r.width_q50) << ','
            << format_number(r.width_q90) << ',' << r.vacuous << ',' << r.errors << ','
            << (include_timing ? format_number(r.seconds) : std::string("NA")) << '\n';
    }
}

void write_widths_csv(std::ostream& out, std::span<const CoverageReport> reports)
{
    out << "method,n,beta,replication,width,covered\n";
    for (const auto& r : reports) {
        for (std::size_t i = 0; i < r.widths.size(); ++i) {
            out << method_name(r.method) << ',' << r.n << ',' << format_number(r.beta) << ',' << i
                << ',' << format_number(r.widths[i]) << ',' << (r.covered[i] ? 1 : 0) << '\n';
        }
    }
}

} // namespace modeset::sim
