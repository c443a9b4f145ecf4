#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "ccasc/csv.hpp"
#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliResult r;
    r.code = ccasc::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("ccasc_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cutoff and threshold print the full quadruple") {
    const CliResult r =
        run_cli({"cutoff", "--mu", "0.6", "--k", "0.5", "--rho", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("proxy_cutoff = 0.55") != std::string::npos);
    CHECK(r.out.find("cutoff = 0.55") != std::string::npos);
    CHECK(r.out.find("s_star = 0.39760279367699") != std::string::npos);
    CHECK(r.out.find("ds_star_dk") != std::string::npos);

    const CliResult t =
        run_cli({"threshold", "--mu", "0.5", "--k", "1.7", "--rho", "1"});
    CHECK(t.code == 0);
    CHECK(t.out.find("proxy_cutoff = 0.5\n") != std::string::npos);
    CHECK(t.out.find("s_star = 0.5\n") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"no-such-command"}).code == 2);
    CHECK(run_cli({"cutoff", "--mu", "not_a_number"}).code == 2);
    CHECK(run_cli({"cutoff", "--mu", "0.5", "--kind", "bogus"}).code == 2);
    CHECK(run_cli({"verify", "--check", "no_such_check"}).code == 2);
    CHECK(run_cli({"simulate", "--horizon", "0"}).code == 2);
}

TEST_CASE("precision command emits the documented schema") {
    TempDir tmp;
    const std::string out = tmp.file("profile.csv");
    const CliResult r = run_cli({"precision", "--k-grid", "0", "0.4", "--mu-lo", "0.4",
                                 "--mu-hi", "0.6", "--mu-n", "5", "-o", out});
    CHECK(r.code == 0);
    const ccasc::CsvTable table = ccasc::read_csv(slurp(out));
    CHECK(table.columns ==
          std::vector<std::string>{"mu", "k", "rho_star", "invests", "net_value", "s_star"});
    CHECK(table.rows.size() == 10);  // 2 k values x 5 beliefs

    const CliResult j = run_cli({"precision", "--k-grid", "0", "--mu-lo", "0.4",
                                 "--mu-hi", "0.6", "--mu-n", "3", "--format", "json"});
    CHECK(j.code == 0);
    CHECK(j.out.find("\"rho_star\"") != std::string::npos);
    CHECK(j.out.find("\"s_star\"") != std::string::npos);
    CHECK(run_cli({"precision", "--format", "yaml"}).code == 2);
}

TEST_CASE("invest-region sweeps fixed costs") {
    TempDir tmp;
    const std::string out = tmp.file("regions.csv");
    const CliResult r =
        run_cli({"invest-region", "--k-grid", "0", "--F-list", "0.06", "1000000",
                 "--mu-lo", "0.02", "--mu-hi", "0.98", "--mu-n", "97", "-o", out});
    CHECK(r.code == 0);
    const ccasc::CsvTable table = ccasc::read_csv(slurp(out));
    CHECK(table.columns == std::vector<std::string>{"k", "F", "mu_lo", "mu_hi"});
    REQUIRE(table.rows.size() == 1);  // huge F contributes no rows
    CHECK(ccasc::parse_double(table.rows[0][2]) == doctest::Approx(0.48));
    CHECK(ccasc::parse_double(table.rows[0][3]) == doctest::Approx(0.52));
}

TEST_CASE("welfare command writes curves and the comparison table") {
    TempDir tmp;
    const std::string curves = tmp.file("curves.csv");
    const std::string table_path = tmp.file("table.csv");
    const CliResult r = run_cli({"welfare", "--F", "0.06", "--lambda", "1", "--k-grid",
                                 "0", "0.2", "0.4", "--mu-n", "25", "-o", curves,
                                 "--table", table_path});
    CHECK(r.code == 0);
    CHECK(r.err.find("shape") != std::string::npos);

    const ccasc::CsvTable curve_table = ccasc::read_csv(slurp(curves));
    CHECK(curve_table.columns ==
          std::vector<std::string>{"lambda", "k", "avg", "min", "max"});
    CHECK(curve_table.rows.size() == 3);

    const ccasc::CsvTable cmp = ccasc::read_csv(slurp(table_path));
    CHECK(cmp.columns == std::vector<std::string>{"k", "avg", "min", "max", "paper_avg",
                                                  "paper_min", "paper_max", "delta"});
    REQUIRE(cmp.rows.size() == 5);
    CHECK(ccasc::parse_double(cmp.rows[0][4]) == doctest::Approx(0.6569));
}

TEST_CASE("simulate is deterministic and honors the config file") {
    TempDir tmp;
    const std::string cfg_path = tmp.file("config.json");
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"k": 0.4, "cost_c": 0.6, "cost_F": 0.06, "horizon": 30,
                   "n_paths": 20, "seed": 99, "kind": "proportional"})";
    }
    const std::string paths_a = tmp.file("a.csv");
    const std::string paths_b = tmp.file("b.csv");
    const std::string summary = tmp.file("summary.json");
    const CliResult a = run_cli({"--config", cfg_path, "simulate", "-o", paths_a,
                                 "--summary", summary});
    CHECK(a.code == 0);
    const CliResult b =
        run_cli({"--config", cfg_path, "simulate", "-o", paths_b, "--summary", summary});
    CHECK(b.code == 0);
    CHECK(slurp(paths_a) == slurp(paths_b));  // identical bytes for identical seeds

    const std::string js = slurp(summary);
    CHECK(js.find("\"n_paths\": 20") != std::string::npos);
    CHECK(js.find("cascade_frequency") != std::string::npos);

    // flag overrides the config file seed; output must change
    const std::string paths_c = tmp.file("c.csv");
    const CliResult c = run_cli({"--config", cfg_path, "simulate", "--seed", "100", "-o",
                                 paths_c, "--summary", summary});
    CHECK(c.code == 0);
    CHECK(slurp(paths_a) != slurp(paths_c));
}

TEST_CASE("config files with unknown keys are rejected") {
    TempDir tmp;
    const std::string cfg_path = tmp.file("bad.json");
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"k": 0.4, "unknown_knob": 3})";
    }
    const CliResult r = run_cli({"--config", cfg_path, "cutoff", "--mu", "0.5"});
    CHECK(r.code == 2);
    CHECK(r.err.find("unknown config key") != std::string::npos);
}

TEST_CASE("degenerate single-point k grid emits one row and no shape") {
    const CliResult r = run_cli({"welfare", "--k-grid", "0", "--mu-n", "9"});
    CHECK(r.code == 0);
    CHECK(r.err.find("shape") == std::string::npos);
    const ccasc::CsvTable table = ccasc::read_csv(r.out);
    CHECK(table.rows.size() == 1);
}

TEST_CASE("verify subcommand runs selected checks and reports verdicts") {
    TempDir tmp;
    const std::string out = tmp.file("verdicts.json");
    const CliResult r = run_cli({"verify", "--check", "threshold_sensitivity",
                                 "investment_nesting_prohibitive", "-o", out});
    CHECK(r.code == 0);
    const std::string js = slurp(out);
    CHECK(js.find("\"all_passed\": true") != std::string::npos);
    CHECK(js.find("threshold_sensitivity") != std::string::npos);
    CHECK(r.err.find("[ok]") != std::string::npos);
}
