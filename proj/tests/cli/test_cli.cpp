#include "modeset/json.hpp"
#include "modeset/sim.hpp"

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int status = -1;
    std::string out;
    std::string err;
};

fs::path tmp_dir()
{
    static const fs::path dir = [] {
        fs::path d(MODESET_TEST_TMP);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Runs the tool through the shell, capturing stdout and stderr separately.
RunResult run(const std::string& args, const std::string& stdin_file = {})
{
    static int counter = 0;
    const auto out_path = tmp_dir() / ("out_" + std::to_string(counter) + ".txt");
    const auto err_path = tmp_dir() / ("err_" + std::to_string(counter) + ".txt");
    ++counter;
    std::string cmd = std::string("'") + MODESET_CLI_PATH + "' " + args;
    if (!stdin_file.empty()) cmd += " < '" + stdin_file + "'";
    cmd += " > '" + out_path.string() + "' 2> '" + err_path.string() + "'";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

fs::path write_column(const std::string& name, const std::vector<double>& values)
{
    const auto p = tmp_dir() / name;
    std::ofstream out(p);
    out.precision(17);
    for (double v : values) out << v << '\n';
    return p;
}

fs::path write_points(const std::string& name, const std::vector<double>& coords)
{
    const auto p = tmp_dir() / name;
    std::ofstream out(p);
    out.precision(17);
    for (std::size_t i = 0; i < coords.size(); i += 2) out << coords[i] << ',' << coords[i + 1] << '\n';
    return p;
}

std::size_t count_lines(const std::string& s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

} // namespace

TEST_CASE("--help exits cleanly and documents exit codes")
{
    const auto r = run("--help");
    CHECK(r.status == 0);
    CHECK(r.out.find("ci") != std::string::npos);
    CHECK(r.out.find("MODESET_THREADS") != std::string::npos);
    CHECK(run("").status == 2);
    CHECK(run("bogus").status == 2);
}

TEST_CASE("ci m1 on a thousand points")
{
    const auto data = write_column("f1_1000.txt", modeset::sim::fbeta_sample(1.0, {5, 0}, 1000));
    const auto r = run("ci --method m1 --alpha 0.05 --input '" + data.string() + "'");
    REQUIRE(r.status == 0);
    const auto parsed = modeset::from_json(r.out);
    CHECK(parsed.set.size() == 1);
    CHECK(parsed.alpha == 0.05);
    CHECK(parsed.method == "m1");
    CHECK(parsed.set.bounded());

    const auto piped = run("ci --input -", data.string());
    CHECK(piped.status == 0);
    CHECK(piped.out == r.out);

    const auto csv = run("ci --format csv --input '" + data.string() + "'");
    REQUIRE(csv.status == 0);
    CHECK(csv.out.rfind("lo,hi\n", 0) == 0);
    CHECK(count_lines(csv.out) == 2);
}

TEST_CASE("ci errors map to exit codes")
{
    const auto small = write_column("small.txt", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3,
                                                  1.4, 1.5, 1.6});
    const auto tiny = run("ci --method m1 --input '" + small.string() + "'");
    CHECK(tiny.status == 3);
    CHECK(tiny.err.find("sample too small") != std::string::npos);

    const auto data = write_column("f1_200.txt", modeset::sim::fbeta_sample(1.0, {5, 1}, 200));
    const auto rho = run("ci --method m3p --rho 1.0 --input '" + data.string() + "'");
    CHECK(rho.status == 2);
    CHECK(rho.err.find("rho must exceed 1") != std::string::npos);

    CHECK(run("ci --method m2 --input '" + data.string() + "'").status == 2);
    CHECK(run("ci --method m9 --input '" + data.string() + "'").status == 2);
    CHECK(run("ci --alpha 1.5 --input '" + data.string() + "'").status == 2);
    CHECK(run("ci --format xml --input '" + data.string() + "'").status == 2);
    CHECK(run("ci --input '" + (tmp_dir() / "missing.txt").string() + "'").status == 2);
    CHECK(run("ci --method m3 --split-fraction 1.0 --input '" + data.string() + "'").status == 2);

    const auto bad = tmp_dir() / "bad.txt";
    std::ofstream(bad) << "0.5\nabc\n1.0\n";
    const auto parse = run("ci --input '" + bad.string() + "'");
    CHECK(parse.status == 2);
    CHECK(parse.err.find("line 2") != std::string::npos);
}

TEST_CASE("ci for the split-based methods")
{
    const auto data = write_column("f1_2000.txt", modeset::sim::fbeta_sample(1.0, {5, 2}, 2000));
    const std::string in = " --input '" + data.string() + "'";

    const auto m2 = run("ci --method m2 --h 0.3 --pilot-r 40 --split-seed 3" + in);
    CHECK(m2.status == 0);
    CHECK(modeset::from_json(m2.out).method == "m2");

    const auto m2a = run("ci --method m2a --h-grid-min 0.05 --h-grid-max 1.0 --h-grid-size 8" + in);
    CHECK(m2a.status == 0);
    CHECK(run("ci --method m2a --h-grid-min 1.0 --h-grid-max 0.5" + in).status == 2);
    const auto listed = run("ci --method m2a --h-grid 0.1,0.2,0.4" + in);
    CHECK(listed.status == 0);
    CHECK(run("ci --method m2a --h-grid 0.4,0.2" + in).status == 2);
    CHECK(run("ci --method m2a --h-grid 0.1,0.2 --h-grid-min 0.1 --h-grid-max 0.2" + in).status == 2);

    const auto m3a = run("ci --method m3 --split-seed 11 --split-fraction 0.4" + in);
    const auto m3b = run("ci --method m3 --split-seed 11 --split-fraction 0.4" + in);
    CHECK(m3a.status == 0);
    CHECK(m3a.out == m3b.out);
    CHECK_FALSE(modeset::from_json(m3a.out).set.empty());

    const auto m3p = run("ci --method m3p --rho 3" + in);
    CHECK(m3p.status == 0);
}

TEST_CASE("simulate is byte-reproducible")
{
    const std::string args = "simulate --methods m1,m3 --n 300 --beta 1,2 --reps 20 --seed 9 --alpha 0.1";
    const auto a = run(args);
    const auto b = run(args + " --threads 2");
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(count_lines(a.out) == 5);

    const auto report = tmp_dir() / "report.csv";
    const auto widths = tmp_dir() / "widths.csv";
    const auto c = run(args + " --out '" + report.string() + "' --emit-widths '" + widths.string() + "'");
    REQUIRE(c.status == 0);
    CHECK(slurp(report) == a.out);
    CHECK(count_lines(slurp(widths)) == 1 + 4 * 20);
    CHECK(slurp(widths).rfind("method,n,beta,replication,width,covered\n", 0) == 0);

    const auto timed = run(args + " --timing");
    CHECK(timed.status == 0);
    CHECK(timed.out.find(",NA") == std::string::npos);

    // Default grids: 3 methods x 2 sizes x 4 betas.
    const auto defaults = run("simulate --reps 2");
    CHECK(defaults.status == 0);
    CHECK(count_lines(defaults.out) == 1 + 24);

    CHECK(run("simulate --methods m1,zz --reps 2").status == 2);
    CHECK(run("simulate --n 10x --reps 2").status == 2);
    CHECK(run("simulate --reps 0").status == 2);
    CHECK(run("simulate --methods m3p --rho 0.5 --reps 2 --n 100").status == 2);
}

TEST_CASE("mode2d writes a mask and a summary")
{
    const auto pts = write_points("disk.csv", modeset::sim::sample_uniform_disk({5, 3}, 500));
    const std::string in = " --input '" + pts.string() + "'";

    const auto r = run("mode2d --gamma 2 --res 12 --box -0.6,0.6,-0.6,0.6" + in);
    REQUIRE(r.status == 0);
    CHECK(r.out.rfind("x,y,in_set\n", 0) == 0);
    CHECK(count_lines(r.out) == 1 + 144);
    CHECK(r.err.find("\"cells\":144") != std::string::npos);

    const auto mask = tmp_dir() / "mask.csv";
    const auto f = run("mode2d --gamma 2 --res 12 --box -0.6,0.6,-0.6,0.6 --threads 2 --out '" + mask.string() + "'" +
                       in);
    REQUIRE(f.status == 0);
    CHECK(slurp(mask) == r.out);
    CHECK(f.out.find("\"members\"") != std::string::npos);

    const auto autobox = run("mode2d --gamma 2 --res 5 --method m3 --split-seed 2 --alpha 0.1" + in);
    CHECK(autobox.status == 0);
    CHECK(count_lines(autobox.out) == 26);

    CHECK(run("mode2d --res 5" + in).status == 2);  // gamma is required
    CHECK(run("mode2d --gamma 2 --res 5 --box -1,1" + in).status == 2);
    CHECK(run("mode2d --gamma 2 --res 5000 --box -1,1,-1,1" + in).status == 2);
    CHECK(run("mode2d --gamma 0" + in).status == 2);
    CHECK(run("mode2d --gamma 1 --res 4 --method m2 --h 0.2" + in).status == 0);
    CHECK(run("mode2d --gamma 2 --res 4 --method m3p --rho 2.5" + in).status == 0);
}
