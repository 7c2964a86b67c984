#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kp2stab/config.hpp"
#include "kp2stab/csv.hpp"
#include "kp2stab/error.hpp"

using namespace kp2stab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("kp2stab_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::vector<std::string> minimal(const std::string& cmd) {
    return {cmd, "--L", "1", "--Nx", "32", "--Ny", "32", "--alpha", "0.5", "--beta", "1", "--T", "5"};
}

std::vector<std::string> read_lines(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    return lines;
}

}  // namespace

TEST_CASE("minimal flags fill documented defaults") {
    const RunConfig c = parse_config(minimal("simulate"), nullptr);
    CHECK(c.command == "simulate");
    CHECK(c.L == 1.0);
    CHECK(c.Nx == 32);
    CHECK(c.dt == 5.0 / 1024.0);
    CHECK(c.theta == 0.5);
    CHECK(c.drift);
    CHECK(c.ic == "gaussian");
    CHECK(c.stride == 1);
    CHECK(c.samples == 20);
    CHECK(c.refinements == std::vector<int>{16, 32, 64});
    CHECK(c.L_values.size() == 5);
}

TEST_CASE("invalid gains are rejected with the admissible range") {
    auto args = minimal("simulate");
    args[8] = "1.0";
    try {
        parse_config(args, nullptr);
        FAIL("alpha = 1 accepted");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("0<|α|<1") != std::string::npos);
    }
    args = minimal("simulate");
    args[10] = "0";
    CHECK_THROWS_AS(parse_config(args, nullptr), ConfigError);
}

TEST_CASE("missing keys, unknown keys and unknown subcommands") {
    try {
        parse_config({"simulate", "--L", "1", "--Nx", "16", "--Ny", "16", "--alpha", "0.5", "--beta", "1"}, nullptr);
        FAIL("missing T accepted");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("'T'") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config({"bogus"}, nullptr), ConfigError);
    CHECK_THROWS_AS(parse_config({}, nullptr), ConfigError);
    const fs::path f = scratch("unknown.json");
    std::ofstream(f) << R"({"L": 1, "Nx": 16, "Ny": 16, "alpha": 0.5, "beta": 1, "T": 1, "gamma": 2})";
    CHECK_THROWS_AS(parse_config({"simulate", "--config", f.string()}, nullptr), ConfigError);
    auto bad = minimal("simulate");
    bad.push_back("--drift");
    bad.push_back("maybe");
    CHECK_THROWS_AS(parse_config(bad, nullptr), ConfigError);
}

TEST_CASE("precedence: defaults, file, environment, flags") {
    const fs::path f = scratch("cfg.json");
    std::ofstream(f) << R"({"L": 2, "Nx": 16, "Ny": 16, "alpha": 0.3, "beta": 0.5, "T": 1, "out": "from_file", "drift": false})";
    RunConfig c = parse_config({"spectrum", "--config", f.string()}, nullptr);
    CHECK(c.L == 2.0);
    CHECK(c.out == "from_file");
    CHECK_FALSE(c.drift);
    c = parse_config({"spectrum", "--config", f.string(), "--alpha", "0.1"}, "from_env");
    CHECK(c.alpha == 0.1);
    CHECK(c.out == "from_env");
    c = parse_config({"spectrum", "--config", f.string(), "--out", "from_flag"}, "from_env");
    CHECK(c.out == "from_flag");
}

TEST_CASE("config echo round-trips") {
    auto args = minimal("observability");
    for (const char* a : {"--seed", "12345678901", "--drift", "off", "--L-values", "1,2.5", "--refinements", "8,16"})
        args.push_back(a);
    const RunConfig c = parse_config(args, nullptr);
    const RunConfig back = config_from_json(nlohmann::json::parse(config_echo(c)), RunConfig{});
    CHECK(back == c);
}

TEST_CASE("double formatting keeps 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("simulate on the zero preset writes a zero energy column") {
    const fs::path out = scratch("zero");
    auto args = minimal("simulate");
    args[2] = "3.14159";
    args[4] = args[6] = "16";
    args[12] = "0.25";
    for (const char* a : {"--ic", "zero", "--dt", "0.0078125", "--out"}) args.push_back(a);
    args.push_back(out.string());
    const RunConfig c = parse_config(args, nullptr);
    std::ostringstream log;
    run_command(c, log);
    const auto lines = read_lines(out / "energy_trace.csv");
    REQUIRE(lines.size() == 2 + 33);
    CHECK(lines[0].rfind("# ", 0) == 0);
    CHECK(config_from_json(nlohmann::json::parse(lines[0].substr(2)), RunConfig{}) == c);
    CHECK(lines[1] == "t,E,I_ux0,I_top,I_nloc,dEdt,rhs,residual");
    for (std::size_t k = 2; k < lines.size(); ++k) {
        std::stringstream ss(lines[k]);
        std::string t, e;
        std::getline(ss, t, ',');
        std::getline(ss, e, ',');
        CHECK(std::stod(e) == 0.0);
    }
    CHECK(fs::exists(out / "snapshots.csv"));
}

TEST_CASE("unwritable output directory is an io error") {
    const fs::path blocker = scratch("blocker");
    std::ofstream(blocker) << "x";
    auto args = minimal("simulate");
    args.push_back("--out");
    args.push_back((blocker / "sub").string());
    args[4] = args[6] = "8";
    const RunConfig c = parse_config(args, nullptr);
    std::ostringstream log;
    CHECK_THROWS_AS(run_command(c, log), IoError);
}

TEST_CASE("executable maps errors to exit codes") {
    const std::string cli = KP2STAB_CLI;
    const int rc = std::system((cli + " simulate --L 1 --Nx 16 --Ny 16 --alpha 1.5 --beta 1 --T 1 2>/dev/null").c_str());
    CHECK(WEXITSTATUS(rc) == 2);
    const fs::path out = scratch("exe");
    const std::string ok = cli + " spectrum --L 1 --Nx 8 --Ny 8 --alpha 0.5 --beta 1 --T 1 --out " + out.string() + " >/dev/null";
    CHECK(WEXITSTATUS(std::system(ok.c_str())) == 0);
    CHECK(fs::exists(out / "spectrum.csv"));
    CHECK(fs::exists(out / "spectrum_summary.csv"));
}
