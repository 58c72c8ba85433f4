#include "commands.hpp"
#include "config.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dampwave;
using namespace dampwave::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("dampwave_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_text(const std::string& cmd, const std::string& text, const fs::path& out) {
    std::ostringstream o, e;
    return dispatch(cmd, text, out.string(), std::nullopt, true, o, e);
}

// Runs the installed executable; returns its exit status.
int run_exe(const std::string& args) {
    std::string cmd = std::string(DAMPWAVE_EXE) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::vector<std::string> issues_of(const std::string& text, const std::string& cmd = "") {
    try {
        parse_config(text, cmd);
    } catch (const ConfigError& e) {
        return e.issues();
    }
    return {};
}

bool mentions(const std::vector<std::string>& issues, const std::string& needle) {
    for (const auto& i : issues)
        if (i.find(needle) != std::string::npos) return true;
    return false;
}

const char* kSmallGrid = "grid.points = 32\ngrid.box_length = 24\n";

}  // namespace

TEST_CASE("minimal config fills defaults") {
    auto cfg = parse_config("model.sigma = 1/4\n# comment\n\n");
    REQUIRE(cfg.sigma == Rational(1, 4));
    REQUIRE(cfg.model.sigma == 0.25);
    REQUIRE(cfg.model.n == 2);
    REQUIRE(cfg.points == 512);
    REQUIRE(cfg.model.mu == 2.0);
    REQUIRE(cfg.times.size() == 25);
    REQUIRE(cfg.times.front() == 1.0);
    REQUIRE(cfg.times.back() == 100.0);
    REQUIRE(cfg.u1.kind == PresetKind::gaussian);
    REQUIRE(cfg.resolved.at("grid.points") == "512");
    REQUIRE(parse_config("model.n = 3").points == 128);
    REQUIRE(parse_config("series.mode = oracle").times.front() == 100.0);
}

TEST_CASE("section headers and dotted keys are equivalent") {
    auto a = parse_config("[model]\nsigma = 3/4\nmu = 1.5\n");
    auto b = parse_config("model.sigma = 0.75\nmodel.mu = 1.5\n");
    REQUIRE(a.sigma == b.sigma);
    REQUIRE(a.model.mu == b.model.mu);
}

TEST_CASE("sigma out of range is rejected with the hypothesis") {
    auto issues = issues_of("model.sigma = 1.5\n");
    REQUIRE(mentions(issues, "sigma must lie in (0,1]"));
}

TEST_CASE("every violation is reported") {
    auto issues = issues_of("model.sigma = 0\nmodel.mu = -1\nmodel.n = 7\nstepper.dt = 0\nbogus.key = 1\nnonlinearity.p = 1\n");
    REQUIRE(issues.size() >= 6);
    REQUIRE(mentions(issues, "unknown key 'bogus.key'"));
    REQUIRE(mentions(issues, "model.mu must be positive"));
    REQUIRE(mentions(issues, "model.n must be 1, 2 or 3"));
    REQUIRE(mentions(issues, "stepper.dt must be positive"));
    REQUIRE(mentions(issues, "nonlinearity.p must exceed 1"));
}

TEST_CASE("unknown and duplicate keys") {
    REQUIRE(mentions(issues_of("model.sigm = 1\n"), "unknown key"));
    REQUIRE(mentions(issues_of("model.mu = 1\nmodel.mu = 2\n"), "duplicate key"));
    REQUIRE(mentions(issues_of("a.b.c = 1\n"), "unknown key"));
}

TEST_CASE("preset checks") {
    REQUIRE(mentions(issues_of("u1.kind = bump\nu1.radius = 40\n"), "strictly inside"));
    REQUIRE(mentions(issues_of("series.mode = oracle\nu1.kind = band_limited_random\n"), "oracle mode"));
    REQUIRE(mentions(issues_of("series.mode = oracle\nu1.center = 1,0\n"), "origin"));
    REQUIRE(mentions(issues_of("u1.center = 1,0,0\n"), "coordinates"));
    REQUIRE(mentions(issues_of("series.mode = oracle\nseries.quantities = u_L1.5\n"), "oracle mode"));
    auto cfg = parse_config("u1.width = 30\n");
    REQUIRE_FALSE(cfg.warnings.empty());
}

TEST_CASE("p below the blow-up threshold warns") {
    auto cfg = parse_config("nonlinearity.p = 2\n", "semilinear");
    REQUIRE(cfg.warnings.size() == 1);
    REQUIRE(cfg.warnings[0].find("blow-up threshold 3") != std::string::npos);
    REQUIRE(parse_config("nonlinearity.p = 4\n", "semilinear").warnings.empty());
}

TEST_CASE("manifest reproduces the resolved configuration") {
    auto cfg = parse_config("model.sigma = 3/4\nseries.times = 1,2,5\nu1.kind = bump\n");
    auto again = parse_config(manifest_text(cfg, "linear-decay"));
    REQUIRE(again.resolved == cfg.resolved);
}

TEST_CASE("exponents subcommand reproduces the sigma = 1/2 table") {
    auto dir = scratch("exponents");
    std::string text = "exponents.sigmas = 1/2\nexponents.n_min = 2\nexponents.n_max = 5\nexponents.m = 3/2\n";
    REQUIRE(run_text("exponents", text, dir) == kPass);
    REQUIRE(slurp(dir / "ranges.csv") ==
            "sigma,n,m,threshold,lo,hi,regime\n"
            "1/2,2,3/2,3,(3,4],half\n"
            "1/2,3,3/2,2,empty,empty,half\n"
            "1/2,4,3/2,5/3,empty,empty,half\n"
            "1/2,5,3/2,3/2,empty,empty,half\n");
    REQUIRE(fs::exists(dir / "manifest.cfg"));
    REQUIRE(fs::exists(dir / "report.txt"));
    REQUIRE(fs::exists(dir / "rates.csv"));
}

TEST_CASE("linear-decay with zero data reports a degenerate series") {
    auto dir = scratch("zero");
    std::string text = std::string(kSmallGrid) + "u1.kind = zero\nseries.times = lin:0:4:5\n";
    REQUIRE(run_text("linear-decay", text, dir) == kPass);
    REQUIRE(slurp(dir / "report.txt").find("degenerate series") != std::string::npos);
    REQUIRE(slurp(dir / "series_u_L2.csv") ==
            "t,value,quantity,mode\n0,0,u_L2,grid\n1,0,u_L2,grid\n2,0,u_L2,grid\n3,0,u_L2,grid\n4,0,u_L2,grid\n");
}

TEST_CASE("identical configs give byte-identical CSV") {
    std::string text = std::string(kSmallGrid) +
                       "u0.kind = band_limited_random\nu1.kind = band_limited_random\nseries.quantities = u_L2, ut_L2\n";
    auto a = scratch("det_a"), b = scratch("det_b");
    run_text("linear-decay", text, a);
    run_text("linear-decay", text, b);
    REQUIRE(slurp(a / "series_u_L2.csv") == slurp(b / "series_u_L2.csv"));
    REQUIRE(slurp(a / "series_ut_L2.csv") == slurp(b / "series_ut_L2.csv"));
    REQUIRE(slurp(a / "verdicts.csv") == slurp(b / "verdicts.csv"));
    auto c = scratch("det_c");
    std::ostringstream o, e;
    dispatch("linear-decay", text, c.string(), 99, true, o, e);
    REQUIRE(slurp(a / "series_u_L2.csv") != slurp(c / "series_u_L2.csv"));
    REQUIRE(slurp(c / "manifest.cfg").find("u0.seed = 99") != std::string::npos);
}

TEST_CASE("oracle linear-decay, sigma = 1, n = 3") {
    auto dir = scratch("shi");
    std::string text = "model.n = 3\nmodel.sigma = 1\nmodel.mu = 1\nseries.mode = oracle\n"
                       "series.quantities = u_L2\nseries.times = log:100:10000:9\nseries.tol = 0.03\n";
    REQUIRE(run_text("linear-decay", text, dir) == kPass);
    auto v = slurp(dir / "verdicts.csv");
    REQUIRE(v.rfind("quantity,predicted,measured,tol,pass\nu_L2,-0.25,", 0) == 0);
    REQUIRE(v.find(",true\n") != std::string::npos);
}

TEST_CASE("oracle-compare agrees before wrapping") {
    auto dir = scratch("compare");
    std::string text = "grid.points = 128\ngrid.box_length = 40\nmodel.sigma = 1\nmodel.mu = 1\n"
                       "series.quantities = u_L2, ut_L2, grad_L2\ncompare.times = 0.5, 2, 8\n";
    REQUIRE(run_text("oracle-compare", text, dir) == kPass);
    auto csv = slurp(dir / "compare.csv");
    REQUIRE(csv.find(",false,true\n") != std::string::npos);  // unwrapped and agreeing
    REQUIRE(csv.find(",true,n/a\n") != std::string::npos);    // t = 8 has reached the boundary layer
}

TEST_CASE("oracle-compare with heavy-tailed kernels flags wrapping") {
    auto dir = scratch("compare_tails");
    std::string text = "grid.points = 128\ngrid.box_length = 40\nmodel.sigma = 1/2\n"
                       "series.quantities = u_L2\ncompare.times = 2, 8\n";
    REQUIRE(run_text("oracle-compare", text, dir) == kVerdictFailure);
    REQUIRE(slurp(dir / "report.txt").find("nothing was compared") != std::string::npos);
}

TEST_CASE("blowup-probe contrast on a small grid") {
    auto dir = scratch("probe");
    std::string text = std::string(kSmallGrid) + "model.sigma = 1/2\nmodel.mu = 2\nu1.kind = bump\nu1.radius = 3\n"
                                                 "probe.p = 2, 4\nprobe.amplitudes = 5, 1e-2\nstepper.dt = 0.02\nstepper.T = 20\n";
    REQUIRE(run_text("blowup-probe", text, dir) == kPass);
    auto csv = slurp(dir / "probe.csv");
    REQUIRE(csv.find(",blowup_detected,") != std::string::npos);
    REQUIRE(csv.find(",completed,") != std::string::npos);
    REQUIRE(fs::exists(dir / "run_0" / "series_u_Linf.csv"));
    REQUIRE(fs::exists(dir / "run_1" / "series_u_Linf.csv"));
}

TEST_CASE("blowup-probe refuses data with nonpositive blowdata") {
    auto dir = scratch("probe_neg");
    std::string text = std::string(kSmallGrid) + "u1.amplitude = -1\n";
    REQUIRE(run_text("blowup-probe", text, dir) == kConfigError);
}

TEST_CASE("picard subcommand contracts for small data") {
    auto dir = scratch("picard");
    std::string text = std::string(kSmallGrid) + "nonlinearity.p = 4\nu1.amplitude = 0.3\nu1.width = 1.5\n"
                                                 "stepper.T = 4\npicard.iterations = 6\npicard.quadrature_points = 41\n";
    REQUIRE(run_text("picard", text, dir) == kPass);
    REQUIRE(slurp(dir / "picard.csv").rfind("index,xnorm_diff,ratio\n0,", 0) == 0);
}

TEST_CASE("executable exit codes") {
    auto dir = scratch("exe");
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    };
    std::string out = " --quiet --out " + (dir / "o").string();
    REQUIRE(run_exe("exponents --config " + write("ok.cfg", "exponents.n_max = 3\n") + out) == kPass);
    REQUIRE(run_exe("exponents --config " + write("bad.cfg", "model.sigma = 1.5\n") + out) == kConfigError);
    REQUIRE(run_exe("exponents --config " + (dir / "missing.cfg").string() + out) == kConfigError);
    REQUIRE(run_exe("exponents" + out) == kConfigError);
    REQUIRE(run_exe("no-such-command") == kConfigError);
    // a predicted rate that the grid cannot match
    REQUIRE(run_exe("linear-decay --config " +
                    write("fail.cfg", std::string(kSmallGrid) + "series.times = log:1:10:6\nseries.tol = 1e-6\n") + out) ==
            kVerdictFailure);
    REQUIRE(run_exe("semilinear --config " +
                    write("steps.cfg", std::string(kSmallGrid) + "stepper.max_steps = 2\nnonlinearity.p = 4\n") + out) ==
            kRuntimeError);
    REQUIRE(run_exe("--version") == 0);
}
