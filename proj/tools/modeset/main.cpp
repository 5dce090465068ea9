#include "input.hpp"

#include "modeset/error.hpp"
#include "modeset/json.hpp"
#include "modeset/mest.hpp"
#include "modeset/methods.hpp"
#include "modeset/multivariate.hpp"
#include "modeset/parallel.hpp"
#include "modeset/sim.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace modeset;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;

struct CiOptions {
    std::string method = "m1";
    double alpha = 0.05;
    std::string input = "-";
    std::optional<double> h;
    std::optional<std::string> h_grid;
    std::optional<double> h_grid_min;
    std::optional<double> h_grid_max;
    std::size_t h_grid_size = 64;
    double rho = 2.0;
    std::optional<std::size_t> pilot_r;
    std::uint64_t split_seed = 0;
    double split_fraction = 0.5;
    std::string format = "json";
};

struct SimulateOptions {
    std::string methods = "m1,m2,m3";
    std::string n_values = "1000,2000";
    std::string beta_values = "0.5,1,2,4";
    double alpha = 0.05;
    std::size_t reps = 1000;
    std::uint64_t seed = 42;
    double rho = 2.0;
    std::string out;
    std::string widths_out;
    bool timing = false;
    std::optional<std::size_t> threads;
};

struct Mode2dOptions {
    double gamma = 0.0;
    double alpha = 0.05;
    std::string input = "-";
    std::string box = "auto";
    std::size_t res = 64;
    std::string method = "m1";
    double rho = 2.0;
    std::optional<double> h;
    std::uint64_t split_seed = 0;
    std::string out;
    std::optional<std::size_t> threads;
};

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw DomainError("empty entry in list '" + text + "'");
        out.push_back(item);
    }
    if (out.empty()) throw DomainError("empty list");
    return out;
}

std::size_t thread_budget(std::optional<std::size_t> requested)
{
    const std::size_t cap = default_thread_count();
    if (!requested) return cap;
    if (*requested == 0) throw DomainError("--threads must be positive");
    return std::getenv("MODESET_THREADS") != nullptr ? std::min(*requested, cap) : *requested;
}

// Checks method-specific flags before any data is read.
MethodConfig method_config(Method method, std::optional<double> h, double rho,
                           std::optional<std::size_t> pilot_r, std::uint64_t split_seed,
                           double split_fraction)
{
    MethodConfig cfg;
    if (method == Method::m2) {
        if (!h) throw DomainError("m2 needs --h");
        if (!(*h > 0.0) || !std::isfinite(*h)) throw DomainError("--h must be positive");
        cfg.h = *h;
    }
    if (method == Method::m3p && !(rho > 1.0)) {
        std::ostringstream msg;
        msg << "m3p: rho must exceed 1, got " << rho;
        throw DomainError(msg.str());
    }
    if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
        throw DomainError("--split-fraction must lie in (0, 1)");
    }
    cfg.rho = rho;
    cfg.split.stream = RngStream{split_seed, 0};
    cfg.split.fraction = split_fraction;
    cfg.split.pilot_r = pilot_r;
    return cfg;
}

int run_ci(const CiOptions& opt)
{
    const Probability alpha = significance_level(opt.alpha);
    const Method method = parse_method(opt.method);
    MethodConfig cfg = method_config(method, opt.h, opt.rho, opt.pilot_r, opt.split_seed, opt.split_fraction);
    if (opt.h_grid && (opt.h_grid_min || opt.h_grid_max)) {
        throw DomainError("--h-grid cannot be combined with --h-grid-min or --h-grid-max");
    }
    if (method == Method::m2a && opt.h_grid) {
        auto grid = cli::parse_number_list(*opt.h_grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
                throw DomainError("--h-grid must list positive, strictly increasing bandwidths");
            }
        }
        cfg.h_grid = std::move(grid);
    } else if (method == Method::m2a && (opt.h_grid_min || opt.h_grid_max)) {
        if (!opt.h_grid_min || !opt.h_grid_max) {
            throw DomainError("--h-grid-min and --h-grid-max must be given together");
        }
        cfg.h_grid = mest::geometric_grid(*opt.h_grid_min, *opt.h_grid_max, opt.h_grid_size);
    } else if (method == Method::m2a && opt.h_grid_size != 64) {
        throw DomainError("--h-grid-size needs --h-grid-min and --h-grid-max");
    }
    if (opt.format != "json" && opt.format != "csv") throw DomainError("--format must be json or csv");

    const auto data = cli::read_input(opt.input, cli::read_column);
    std::string_view name = method_name(method);
    try {
        const auto outcome = run_method(method, data, alpha, cfg);
        if (outcome.vacuous) {
            std::cerr << "modeset ci: warning: " << name << " threshold excluded nothing; set is the clamped hull\n";
        }
        if (opt.format == "json") {
            std::cout << to_json(outcome.set, opt.alpha, name) << '\n';
        } else {
            std::cout << "lo,hi\n";
            std::cout.precision(17);
            for (const auto& iv : outcome.set.intervals()) std::cout << iv.lo << ',' << iv.hi << '\n';
        }
    } catch (const std::exception& e) {
        // Prefix the method so scripts can tell which construction failed.
        if (const auto* inf = dynamic_cast<const InfeasibleError*>(&e)) {
            throw InfeasibleError(std::string(name) + ": " + inf->what());
        }
        if (const auto* dom = dynamic_cast<const DomainError*>(&e)) {
            throw DomainError(std::string(name) + ": " + dom->what());
        }
        throw;
    }
    return kExitOk;
}

int run_simulate(const SimulateOptions& opt)
{
    sim::StudyConfig cfg;
    cfg.methods.clear();
    for (const auto& m : split_list(opt.methods)) cfg.methods.push_back(parse_method(m));
    cfg.n_values.clear();
    for (double v : cli::parse_number_list(opt.n_values)) {
        if (!(v >= 1.0) || v != std::floor(v)) throw DomainError("--n entries must be positive integers");
        cfg.n_values.push_back(static_cast<std::size_t>(v));
    }
    cfg.beta_values = cli::parse_number_list(opt.beta_values);
    for (double b : cfg.beta_values) {
        if (!(b > 0.0)) throw DomainError("--beta entries must be positive");
    }
    significance_level(opt.alpha);
    cfg.alpha = opt.alpha;
    if (opt.reps == 0) throw DomainError("--reps must be positive");
    cfg.replications = opt.reps;
    cfg.base_seed = opt.seed;
    cfg.rho = opt.rho;
    for (Method m : cfg.methods) {
        if (m == Method::m3p && !(opt.rho > 1.0)) throw DomainError("m3p: rho must exceed 1");
    }
    cfg.threads = thread_budget(opt.threads);

    std::ofstream report_file;
    std::ofstream widths_file;
    if (!opt.out.empty()) {
        report_file.open(opt.out);
        if (!report_file) throw DomainError("cannot write '" + opt.out + "'");
    }
    if (!opt.widths_out.empty()) {
        widths_file.open(opt.widths_out);
        if (!widths_file) throw DomainError("cannot write '" + opt.widths_out + "'");
    }

    const auto reports = sim::run_coverage_study(cfg);
    std::ostream& out = opt.out.empty() ? std::cout : report_file;
    sim::write_report_csv(out, reports, opt.timing);
    if (!opt.widths_out.empty()) sim::write_widths_csv(widths_file, reports);
    for (const auto& r : reports) {
        if (r.errors > 0) {
            std::cerr << "modeset simulate: " << method_name(r.method) << " n=" << r.n << " beta=" << r.beta
                      << ": " << r.errors << " replications failed\n";
        }
    }
    return kExitOk;
}

int run_mode2d(const Mode2dOptions& opt)
{
    const Probability alpha = significance_level(opt.alpha);
    const Method method = parse_method(opt.method);
    const MethodConfig cfg = method_config(method, opt.h, opt.rho, std::nullopt, opt.split_seed, 0.5);
    if (!(opt.gamma > 0.0)) throw DomainError("--gamma must be positive");
    if (opt.res == 0) throw DomainError("--res must be positive");
    std::optional<std::vector<double>> explicit_box;
    if (opt.box != "auto") explicit_box = cli::parse_number_list(opt.box);
    const std::size_t threads = thread_budget(opt.threads);

    auto rows = cli::read_input(opt.input, cli::read_points);
    if (rows.dim > 3) throw DomainError("mode2d scans at most 3 dimensions, input has " + std::to_string(rows.dim));
    const multivariate::PointCloud cloud(std::move(rows.coords), rows.dim, opt.gamma);

    multivariate::Box box;
    if (explicit_box) {
        if (explicit_box->size() != 2 * cloud.dim()) {
            throw DomainError("--box needs " + std::to_string(2 * cloud.dim()) + " numbers (lo,hi per axis)");
        }
        for (std::size_t k = 0; k < cloud.dim(); ++k) {
            box.lo.push_back((*explicit_box)[2 * k]);
            box.hi.push_back((*explicit_box)[2 * k + 1]);
        }
    } else {
        box = multivariate::bounding_box(cloud, 0.1);
    }
    const std::vector<std::size_t> resolution(cloud.dim(), opt.res);
    const auto grid = multivariate::scan_region(cloud, box, resolution, alpha, method, cfg, threads);

    std::ofstream mask_file;
    if (!opt.out.empty()) {
        mask_file.open(opt.out);
        if (!mask_file) throw DomainError("cannot write '" + opt.out + "'");
    }
    std::ostream& mask_out = opt.out.empty() ? std::cout : mask_file;
    static constexpr const char* axes[] = {"x", "y", "z"};
    for (std::size_t k = 0; k < cloud.dim(); ++k) mask_out << axes[k] << ',';
    mask_out << "in_set\n";
    mask_out.precision(12);
    for (std::size_t c = 0; c < grid.cell_count(); ++c) {
        for (double v : grid.center(c)) mask_out << v << ',';
        mask_out << (grid.mask[c] ? 1 : 0) << '\n';
    }

    nlohmann::json summary;
    summary["method"] = std::string(method_name(method));
    summary["alpha"] = opt.alpha;
    summary["gamma"] = opt.gamma;
    summary["n"] = cloud.size();
    summary["dim"] = cloud.dim();
    summary["resolution"] = grid.resolution;
    summary["box"] = {{"lo", grid.box.lo}, {"hi", grid.box.hi}};
    summary["cells"] = grid.cell_count();
    summary["members"] = grid.members();
    summary["empty"] = grid.members() == 0;
    // The summary goes wherever the mask does not.
    (opt.out.empty() ? std::cerr : std::cout) << summary.dump() << '\n';
    if (grid.members() == 0) std::cerr << "modeset mode2d: no grid cell is in the set\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite-sample confidence sets for the mode of a unimodal distribution"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.footer("Exit status: 0 success, 2 invalid data or flags, 3 method infeasible for the data.\n"
               "MODESET_THREADS caps the number of worker threads.");

    CiOptions ci;
    auto* ci_cmd = app.add_subcommand("ci", "Confidence set for the mode of a univariate sample (JSON on stdout)");
    ci_cmd->add_option("--method", ci.method, "m1 | m2 | m2a | m3 | m3p")->capture_default_str();
    ci_cmd->add_option("--alpha", ci.alpha, "Significance level in (0, 1)")->capture_default_str();
    ci_cmd->add_option("--input", ci.input, "File with one number per line; '-' reads stdin")->capture_default_str();
    ci_cmd->add_option("--h", ci.h, "Bandwidth for m2");
    ci_cmd->add_option("--h-grid", ci.h_grid, "Explicit comma-separated m2a bandwidths, increasing");
    ci_cmd->add_option("--h-grid-min", ci.h_grid_min, "Smallest bandwidth of the m2a grid");
    ci_cmd->add_option("--h-grid-max", ci.h_grid_max, "Largest bandwidth of the m2a grid");
    ci_cmd->add_option("--h-grid-size", ci.h_grid_size, "Number of geometric m2a grid points")->capture_default_str();
    ci_cmd->add_option("--rho", ci.rho, "Exponent for m3p, must exceed 1")->capture_default_str();
    ci_cmd->add_option("--pilot-r", ci.pilot_r, "Venter window for the pilot of m2, m2a, m3, m3p");
    ci_cmd->add_option("--split-seed", ci.split_seed, "Seed of the sample split")->capture_default_str();
    ci_cmd->add_option("--split-fraction", ci.split_fraction, "Share of the data used for the pilot")
        ->capture_default_str();
    ci_cmd->add_option("--format", ci.format, "json | csv")->capture_default_str();

    SimulateOptions simulate;
    auto* sim_cmd = app.add_subcommand("simulate", "Coverage and width study on the f_beta family (CSV)");
    sim_cmd->add_option("--methods", simulate.methods, "Comma-separated methods")->capture_default_str();
    sim_cmd->add_option("--n", simulate.n_values, "Comma-separated sample sizes")->capture_default_str();
    sim_cmd->add_option("--beta", simulate.beta_values, "Comma-separated smoothness exponents")
        ->capture_default_str();
    sim_cmd->add_option("--alpha", simulate.alpha, "Significance level")->capture_default_str();
    sim_cmd->add_option("--reps", simulate.reps, "Replications per (method, n, beta)")->capture_default_str();
    sim_cmd->add_option("--seed", simulate.seed, "Base seed")->capture_default_str();
    sim_cmd->add_option("--rho", simulate.rho, "Exponent for m3p")->capture_default_str();
    sim_cmd->add_option("--out", simulate.out, "Report CSV path; stdout when omitted");
    sim_cmd->add_option("--emit-widths", simulate.widths_out, "Also write per-replication widths to this CSV");
    sim_cmd->add_flag("--timing", simulate.timing, "Fill the seconds column (output is then not reproducible)");
    sim_cmd->add_option("--threads", simulate.threads, "Worker threads; defaults to MODESET_THREADS or all cores");

    Mode2dOptions mode2d;
    auto* m2d_cmd = app.add_subcommand("mode2d", "Grid scan of the multivariate mode confidence set");
    m2d_cmd->add_option("--gamma", mode2d.gamma, "Unimodality index gamma > 0 (required)")->required();
    m2d_cmd->add_option("--alpha", mode2d.alpha, "Significance level")->capture_default_str();
    m2d_cmd->add_option("--input", mode2d.input, "Headerless CSV, one point per row; '-' reads stdin")
        ->capture_default_str();
    m2d_cmd->add_option("--box", mode2d.box, "'auto' or lo,hi per axis, e.g. -1,1,-1,1")->capture_default_str();
    m2d_cmd->add_option("--res", mode2d.res, "Cells per axis")->capture_default_str();
    m2d_cmd->add_option("--method", mode2d.method, "Univariate method applied to the radial transform")
        ->capture_default_str();
    m2d_cmd->add_option("--rho", mode2d.rho, "Exponent for m3p")->capture_default_str();
    m2d_cmd->add_option("--h", mode2d.h, "Bandwidth for m2");
    m2d_cmd->add_option("--split-seed", mode2d.split_seed, "Seed of the sample split")->capture_default_str();
    m2d_cmd->add_option("--out", mode2d.out, "Mask CSV path; with it the JSON summary goes to stdout, "
                                             "without it the mask goes to stdout and the summary to stderr");
    m2d_cmd->add_option("--threads", mode2d.threads, "Worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (ci_cmd->parsed()) return run_ci(ci);
        if (sim_cmd->parsed()) return run_simulate(simulate);
        return run_mode2d(mode2d);
    } catch (const InfeasibleError& e) {
        std::cerr << "modeset: infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const DomainError& e) {
        std::cerr << "modeset: invalid input: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "modeset: error: " << e.what() << '\n';
        return 1;
    }
}
