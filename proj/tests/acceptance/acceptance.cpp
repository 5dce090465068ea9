// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Seeds are fixed so every run reproduces the same numbers.

#include "modeset/edelman.hpp"
#include "modeset/mest.hpp"
#include "modeset/multivariate.hpp"
#include "modeset/numerics.hpp"
#include "modeset/parallel.hpp"
#include "modeset/rng.hpp"
#include "modeset/sim.hpp"
#include "modeset/spacings.hpp"

#include "oracles.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace modeset;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* pattern, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

double coverage_floor(double alpha, std::size_t reps)
{
    return 1.0 - alpha - 2.0 * oracle::mc_se(alpha, reps);
}

const sim::CoverageReport& find(const std::vector<sim::CoverageReport>& rs, Method m, std::size_t n)
{
    for (const auto& r : rs) {
        if (r.method == m && r.n == n) return r;
    }
    throw std::logic_error("missing report");
}

// Shared study for criteria 1 and 2: M1, M2, M3 at n = 1000 and 2000, beta = 1.
const std::vector<sim::CoverageReport>& main_study()
{
    static const auto reports = [] {
        sim::StudyConfig cfg;
        cfg.methods = {Method::m1, Method::m2, Method::m3};
        cfg.n_values = {1000, 2000};
        cfg.beta_values = {1.0};
        cfg.replications = 500;
        cfg.base_seed = 20240601;
        cfg.threads = default_thread_count();
        return sim::run_coverage_study(cfg);
    }();
    return reports;
}

Outcome criterion_coverage()
{
    const double floor = coverage_floor(0.05, 500);
    Outcome o{true, {}};
    for (Method m : {Method::m1, Method::m2, Method::m3}) {
        const auto& r = find(main_study(), m, 1000);
        o.pass = o.pass && r.coverage >= floor;
        o.detail += fmt("%s=%.4f ", std::string(method_name(m)).c_str(), r.coverage);
    }
    o.detail += fmt("(floor %.4f)", floor);
    return o;
}

Outcome criterion_width_shrinkage()
{
    Outcome o{true, {}};
    for (Method m : {Method::m1, Method::m2}) {
        const double w1 = find(main_study(), m, 1000).width_q50;
        const double w2 = find(main_study(), m, 2000).width_q50;
        o.pass = o.pass && w2 < w1;
        o.detail += fmt("%s %.4f->%.4f ", std::string(method_name(m)).c_str(), w1, w2);
    }
    const double w1 = find(main_study(), Method::m3, 1000).width_q50;
    const double w2 = find(main_study(), Method::m3, 2000).width_q50;
    const double ratio = w2 / w1;
    o.pass = o.pass && ratio >= 0.75 && ratio <= 1.25;
    o.detail += fmt("m3 ratio %.4f", ratio);
    return o;
}

Outcome criterion_m1_rate()
{
    sim::StudyConfig cfg;
    cfg.methods = {Method::m1};
    cfg.n_values = {1000, 2000, 4000};
    cfg.beta_values = {1.0};
    cfg.replications = 500;
    cfg.base_seed = 20240602;
    cfg.threads = default_thread_count();
    const auto reports = sim::run_coverage_study(cfg);
    Outcome o{true, {}};
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& r : reports) {
        const double n = static_cast<double>(r.n);
        const double ratio = r.width_q50 * std::cbrt(n) / std::log(n);
        o.pass = o.pass && ratio <= 1.2 * prev;
        o.detail += fmt("n=%zu:%.4f ", r.n, ratio);
        prev = ratio;
    }
    return o;
}

Outcome criterion_edelman_single()
{
    const std::size_t reps = 10000;
    Outcome o{true, {}};
    std::uint64_t tag = 0;
    for (double a : {0.3, -0.5}) {
        for (double alpha : {0.1, 0.5}) {
            const auto x = sim::fbeta_sample(1.0, {4004, tag++}, reps);
            std::size_t hits = 0;
            for (double v : x) {
                // Direct evaluation of the two-sided inequality.
                const double d = std::fabs(v - a);
                hits += (v - (2 / alpha - 1) * d <= 0.0 && 0.0 <= v + (2 / alpha + 1) * d) ? 1 : 0;
                const bool lib = edelman::edelman_single_interval(v, a, Probability(alpha)).contains(0.0);
                if (lib != (v - (2 / alpha - 1) * d <= 0.0 && 0.0 <= v + (2 / alpha + 1) * d)) o.pass = false;
            }
            const double cov = static_cast<double>(hits) / reps;
            o.pass = o.pass && cov >= coverage_floor(alpha, reps);
            o.detail += fmt("a=%g,alpha=%g:%.4f ", a, alpha, cov);
        }
    }
    return o;
}

// Frequency with which the trinomial mean deviation exceeds factor *
// sqrt(3 / (2n)) (sqrt(ln(1/alpha)) + 2).
double trinomial_exceedance(double p, double q, std::size_t n, double alpha, double factor, RngStream stream,
                            std::size_t reps)
{
    const double mu = (1.0 - p - q) - p;  // values -1, 0, 1 with probabilities p, q, 1 - p - q
    const double bound = factor * std::sqrt(3.0 / (2.0 * n)) * (std::sqrt(std::log(1.0 / alpha)) + 2.0);
    CounterRng rng(stream);
    std::size_t exceed = 0;
    for (std::size_t r = 0; r < reps; ++r) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = rng.uniform();
            s += u < p ? -1.0 : (u < p + q ? 0.0 : 1.0);
        }
        exceed += (s / n - mu > bound) ? 1 : 0;
    }
    return static_cast<double>(exceed) / reps;
}

Outcome criterion_trinomial()
{
    Outcome o{true, {}};
    double worst3 = 0.0;
    double worst2 = 0.0;
    std::uint64_t tag = 0;
    for (auto [p, q] : {std::pair{0.3, 0.3}, std::pair{0.1, 0.8}}) {
        for (std::size_t n : {100u, 1000u}) {
            for (double alpha : {0.05, 0.2}) {
                const double f3 = trinomial_exceedance(p, q, n, alpha, 3.0, {5005, tag}, 10000);
                const double f2 = trinomial_exceedance(p, q, n, alpha, 2.0, {5005, tag}, 10000);
                ++tag;
                o.pass = o.pass && f3 <= alpha;
                worst3 = std::max(worst3, f3 / alpha);
                worst2 = std::max(worst2, f2 / alpha);
            }
        }
    }
    o.detail = fmt("max freq/alpha: factor 3 %.4f, factor 2 (not gated) %.4f", worst3, worst2);
    return o;
}

Outcome criterion_dkw()
{
    const std::size_t reps = 10000;
    const std::size_t n = 500;
    const double alpha = 0.05;
    const double eps = std::sqrt(std::log(2.0 / alpha) / (2.0 * n));
    std::vector<char> exceed(reps, 0);
    parallel_for(reps, default_thread_count(), [&](std::size_t r) {
        auto u = sample_uniform({6006, r}, n);
        std::sort(u.begin(), u.end());
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d = std::max(d, static_cast<double>(i + 1) / n - u[i]);
            d = std::max(d, u[i] - static_cast<double>(i) / n);
        }
        exceed[r] = d > eps ? 1 : 0;
    });
    const double freq = static_cast<double>(std::count(exceed.begin(), exceed.end(), 1)) / reps;
    // Exact exceedance probability for reference; the gate is the Monte-Carlo frequency.
    const double exact = 1.0 - oracle::kolmogorov_cdf(n, eps);
    return {freq <= alpha, fmt("exceedance %.4f (alpha %.2f, mc-se %.4f; exact probability %.5f)", freq, alpha,
                               oracle::mc_se(alpha, reps), exact)};
}

// Brute-force membership over a dense grid covering the set and the data.
template <typename Member>
std::size_t grid_mismatches(const ConfidenceSet& set, const SortedSample& pts, Member member, std::size_t points)
{
    const auto hull = set.hull();
    if (!hull) return points;
    const double span = std::max(hull->width(), pts.range());
    const double lo = std::min(hull->lo, pts.min()) - 0.25 * span;
    const double hi = std::max(hull->hi, pts.max()) + 0.25 * span;
    std::vector<std::size_t> bad(points + 1, 0);
    parallel_for(points + 1, default_thread_count(), [&](std::size_t j) {
        const double theta = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(points);
        bad[j] = set.contains(theta) != member(theta) ? 1 : 0;
    });
    return static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1));
}

std::size_t m2_instance_mismatches(CounterRng& rng)
{
    const std::size_t n = 2 + rng.uniform_below(49);
    std::vector<double> s2(n);
    for (auto& v : s2) v = sim::FBetaDensity(1.0).quantile(rng.uniform());
    const double h = 0.02 + 0.8 * rng.uniform();
    const double pilot = s2[rng.uniform_below(n)] + (rng.uniform() - 0.5) * h;
    const double slack = rng.uniform() * static_cast<double>(n) * 0.5;

    const auto ls = mest::level_set(mest::window_statistic(s2, h), pilot, slack);
    const double threshold = oracle::window_count(s2, pilot, h) - slack;
    std::vector<double> bps;
    for (double x : s2) {
        bps.push_back(x - h);
        bps.push_back(x + h);
    }
    std::sort(bps.begin(), bps.end());
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < bps.size(); ++i) {
        if (bps[i] > bps[i - 1]) gap = std::min(gap, bps[i] - bps[i - 1]);
    }
    const double step = gap / 3.5;
    std::size_t bad = 0;
    for (double theta = bps.front() - 1.0 + 0.37 * step; theta < bps.back() + 1.0; theta += step) {
        bool expected = oracle::window_count(s2, theta, h) >= threshold;
        if (threshold <= 0.0) expected = theta >= bps.front() && theta <= bps.back();
        bad += ls.set.contains(theta) != expected ? 1 : 0;
    }
    return bad;
}

Outcome criterion_level_set_oracle()
{
    CounterRng rng({7007, 0});
    std::size_t m2_bad = 0;
    for (int t = 0; t < 100; ++t) m2_bad += m2_instance_mismatches(rng);

    std::size_t m3_bad = 0;
    std::size_t m3p_bad = 0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + rng.uniform_below(50);
        std::vector<double> pts(n);
        for (auto& v : pts) v = sim::FBetaDensity(1.0).quantile(rng.uniform());
        const double pilot = (rng.uniform() - 0.3) * 0.5;
        const double alpha = 0.01 + 0.3 * rng.uniform();
        const double rho = 1.1 + 3.0 * rng.uniform();
        const SortedSample sorted(pts);

        const edelman::EdelmanStatistic fstat{sorted, pilot, rho};
        const double cutoff = oracle::chisq_quantile(1.0 - alpha, 2.0 * static_cast<double>(n));
        m3_bad += grid_mismatches(edelman::fisher_set(fstat, Probability(alpha)), sorted,
                                  [&](double th) { return oracle::fisher(pts, pilot, th) < cutoff; }, 1000000);
        m3p_bad += grid_mismatches(edelman::markov_set(fstat, Probability(alpha)), sorted,
                                   [&](double th) { return oracle::markov(pts, pilot, th, rho) < 1.0 / alpha; },
                                   1000000);
    }
    return {m2_bad == 0 && m3_bad == 0 && m3p_bad == 0,
            fmt("mismatched grid points: m2 %zu, m3 %zu, m3p %zu", m2_bad, m3_bad, m3p_bad)};
}

Outcome criterion_numerics()
{
    // Shapes and tail levels used by the n = 4096 plan, then random triples.
    struct Triple {
        double p, a, b;
    };
    std::vector<Triple> cases;
    const auto plan = spacings::build_plan(4096, Probability(0.05));
    for (int b = 0; b <= plan.b_max; ++b) {
        const double k = static_cast<double>(plan.block(b));
        cases.push_back({plan.level[b], k, 4097.0 - k});
        cases.push_back({1.0 - plan.level[b], k, 4097.0 - k});
    }
    CounterRng rng({8008, 0});
    for (int i = 0; i < 1000; ++i) {
        const double a = std::exp(std::log(0.5) + rng.uniform() * (std::log(5000.0) - std::log(0.5)));
        const double b = std::exp(std::log(0.5) + rng.uniform() * (std::log(5000.0) - std::log(0.5)));
        const double p = std::pow(10.0, -8.0 * rng.uniform()) * (rng.uniform() < 0.5 ? 1.0 : -1.0);
        cases.push_back({p > 0 ? p : 1.0 + p, a, b});
    }
    // A triple is ill-posed when no double within one ulp of the returned
    // quantile reaches the tolerance; there the result must be the closest
    // of those doubles instead.
    double worst_trip = 0.0;
    double worst_boost = 0.0;
    std::size_t ill_posed = 0;
    std::size_t not_best = 0;
    for (const auto& c : cases) {
        const double x = numerics::qbeta(c.p, c.a, c.b);
        const double err = std::fabs(numerics::reg_inc_beta(x, c.a, c.b) - c.p);
        const double below = std::fabs(numerics::reg_inc_beta(std::nextafter(x, 0.0), c.a, c.b) - c.p);
        const double above = std::fabs(numerics::reg_inc_beta(std::min(1.0, std::nextafter(x, 1.0)), c.a, c.b) - c.p);
        if (std::min({err, below, above}) > 1e-9) {
            ++ill_posed;
            not_best += err <= std::min(below, above) ? 0 : 1;
            continue;
        }
        worst_trip = std::max(worst_trip, err);
        worst_boost = std::max(worst_boost, std::fabs(boost::math::ibeta(c.a, c.b, x) - c.p));
    }
    double worst_chisq = 0.0;
    for (int i = 1; i < 1000; ++i) {
        const double p = i / 1000.0;
        worst_chisq = std::max(worst_chisq, std::fabs(numerics::qchisq(p, 2.0) + 2.0 * std::log1p(-p)));
    }
    for (double p : {1e-12, 1e-6, 0.999999, 1.0 - 1e-10}) {
        worst_chisq = std::max(worst_chisq, std::fabs(numerics::qchisq(p, 2.0) + 2.0 * std::log1p(-p)));
    }
    return {cases.size() - ill_posed >= 1000 && worst_trip <= 1e-9 && worst_boost <= 1e-9 && not_best == 0 &&
                worst_chisq <= 1e-10,
            fmt("round trip %.2e (boost %.2e) over %zu well-posed cases; %zu ill-posed, %zu not closest; "
                "qchisq(.,2) %.2e",
                worst_trip, worst_boost, cases.size() - ill_posed, ill_posed, not_best, worst_chisq)};
}

Outcome criterion_dependent()
{
    const std::size_t reps = 500;
    std::vector<char> hit(reps, 0);
    parallel_for(reps, default_thread_count(), [&](std::size_t r) {
        const auto x = sim::fbeta_sample_equicorrelated(1.0, {9009, r}, 1000, 0.5);
        const SplitConfig split{sim::split_stream(9009, r)};
        hit[r] = edelman::m3prime_confidence_set(x, Probability(0.05), 2.0, split).set.contains(0.0) ? 1 : 0;
    });
    const double cov = static_cast<double>(std::count(hit.begin(), hit.end(), 1)) / reps;
    const double floor = coverage_floor(0.05, reps);
    return {cov >= floor, fmt("m3p coverage %.4f (floor %.4f)", cov, floor)};
}

Outcome criterion_multivariate()
{
    const std::size_t reps = 300;
    const std::vector<double> centre{0.0, 0.0};
    std::vector<char> hit(reps, 0);
    parallel_for(reps, default_thread_count(), [&](std::size_t r) {
        const multivariate::PointCloud cloud(sim::sample_uniform_disk({10010, r}, 1000), 2, 2.0);
        hit[r] = multivariate::contains_mode_candidate(cloud, centre, Probability(0.05), Method::m1, {}) ? 1 : 0;
    });
    const double cov = static_cast<double>(std::count(hit.begin(), hit.end(), 1)) / reps;
    const double floor = coverage_floor(0.05, reps);
    return {cov >= floor, fmt("coverage at the centre %.4f (floor %.4f)", cov, floor)};
}

Outcome criterion_determinism()
{
    sim::StudyConfig cfg;
    cfg.methods = {Method::m1, Method::m2, Method::m2a, Method::m3, Method::m3p};
    cfg.n_values = {500, 1000};
    cfg.beta_values = {0.5, 2.0};
    cfg.replications = 30;
    cfg.base_seed = 11011;
    std::string first;
    std::string first_widths;
    for (std::size_t threads : {std::size_t{1}, default_thread_count(), std::size_t{3}}) {
        cfg.threads = threads;
        const auto reports = sim::run_coverage_study(cfg);
        std::ostringstream csv;
        std::ostringstream widths;
        sim::write_report_csv(csv, reports);
        sim::write_widths_csv(widths, reports);
        if (first.empty()) {
            first = csv.str();
            first_widths = widths.str();
        } else if (csv.str() != first || widths.str() != first_widths) {
            return {false, fmt("CSV differs at %zu threads", threads)};
        }
    }
    return {true, fmt("three runs byte-identical (%zu bytes)", first.size())};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"coverage of m1, m2, m3 at n=1000", criterion_coverage},
        {"width shrinkage from n=1000 to n=2000", criterion_width_shrinkage},
        {"m1 rate ratio non-increasing within 20%", criterion_m1_rate},
        {"single-observation inequality coverage", criterion_edelman_single},
        {"trinomial deviation threshold", criterion_trinomial},
        {"DKW band simultaneity", criterion_dkw},
        {"exact level-set extraction vs brute force", criterion_level_set_oracle},
        {"qbeta, reg_inc_beta and qchisq accuracy", criterion_numerics},
        {"m3p coverage under equicorrelated data", criterion_dependent},
        {"multivariate lift coverage on the disk", criterion_multivariate},
        {"simulate determinism", criterion_determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %zu: %s | %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
